// Copyright 2026 The fluxcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fluxcz/model.hpp"

#include <cmath>

namespace fluxcz {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

/// exp(-i (a I + v . sigma)) in closed form.
Eigen::Matrix2cd su2_exp(double a, double vx, double vy, double vz) {
  const double r = std::sqrt(vx * vx + vy * vy + vz * vz);
  Eigen::Matrix2cd u;
  if (r == 0.0) {
    u = Eigen::Matrix2cd::Identity();
  } else {
    const double c = std::cos(r);
    const double s = std::sin(r) / r;
    u << c - kI * s * vz, -kI * s * (vx - kI * vy),
         -kI * s * (vx + kI * vy), c + kI * s * vz;
  }
  return std::exp(-kI * a) * u;
}

int sign_of(int bit) { return bit == 0 ? 1 : -1; }

}  // namespace

double Propagator::unitarity_defect() const {
  Eigen::MatrixXcd g = matrix.adjoint() * matrix;
  g -= Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
  return g.cwiseAbs().maxCoeff();
}

Eigen::Matrix2cd Propagator::block(ComputationalLabel label) const {
  if (dim() != 8) throw std::logic_error("Propagator::block requires dim 8");
  return matrix.block<2, 2>(2 * label.index(), 2 * label.index());
}

std::array<SubspaceDetuning, 4> subspace_frequencies(const DeviceParams& params) {
  params.validate();
  const double t1 = 0.5 * params.zeta1c;
  const double t2 = 0.5 * params.zeta2c;
  // w11 and w10 come from the exact doubled sum so that the sum rule
  // w00 + w11 == w01 + w10 holds bit-exactly (Sterbenz: |zeta| << wC).
  const double s = 2.0 * params.omegaC;
  const double w00 = params.omegaC + (t1 + t2);
  const double w01 = params.omegaC + (t1 - t2);
  std::array<SubspaceDetuning, 4> out;
  out[0] = {ComputationalLabel{0, 0}, w00, 0.0, 0.0};
  out[1] = {ComputationalLabel{0, 1}, w01, 0.0, 0.0};
  out[2] = {ComputationalLabel{1, 0}, s - w01, 0.0, 0.0};
  out[3] = {ComputationalLabel{1, 1}, s - w00, 0.0, 0.0};
  return out;
}

TransitionSet transitions_from(const DeviceParams& params) {
  const auto f = subspace_frequencies(params);
  TransitionSet t;
  for (int k = 0; k < 4; ++k) t[k] = f[k].omegaMN;
  return t;
}

std::array<SubspaceDetuning, 4> detune(const TransitionSet& transitions,
                                       double omegaD, double amp) {
  transitions.validate();
  std::array<SubspaceDetuning, 4> out;
  for (int k = 0; k < 4; ++k) {
    const double w = transitions[k];
    const double d = omegaD - w;
    out[k] = {ComputationalLabel::from_index(k), w, d,
              std::sqrt(d * d + amp * amp)};
  }
  return out;
}

DeviceParams fit_device_params(const TransitionSet& transitions,
                               double omega1, double omega2) {
  transitions.validate();
  // Orthogonal design: wC is the mean, the couplings are contrasts.
  const double w00 = transitions.w00, w01 = transitions.w01;
  const double w10 = transitions.w10, w11 = transitions.w11;
  DeviceParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.omegaC = 0.25 * (w00 + w01 + w10 + w11);
  p.zeta1c = 0.5 * ((w00 + w01) - (w10 + w11));
  p.zeta2c = 0.5 * ((w00 + w10) - (w01 + w11));
  p.zeta12 = 0.0;
  p.validate();
  return p;
}

Eigen::Vector2cd rabi_state(double delta, double amp, double t) {
  const double omegaR = std::sqrt(delta * delta + amp * amp);
  Eigen::Vector2cd psi;
  if (omegaR == 0.0) {
    psi << 1.0, 0.0;
    return psi;
  }
  const double x = 0.5 * omegaR * t;
  const double c = std::cos(x);
  const double s = std::sin(x);
  psi << c + kI * (delta / omegaR) * s, -kI * (amp / omegaR) * s;
  return psi;
}

Eigen::Vector2cd rabi_state(const SubspaceDetuning& detuning, double amp, double t) {
  return rabi_state(detuning.deltaMN, amp, t);
}

Eigen::Matrix2cd rabi_propagator(double delta, double amp, double t,
                                 double carrierPhase) {
  // H = -delta/2 sigma_z + amp/2 (cos(ph) sigma_x + sin(ph) sigma_y)
  return su2_exp(0.0, 0.5 * t * amp * std::cos(carrierPhase),
                 0.5 * t * amp * std::sin(carrierPhase), -0.5 * t * delta);
}

Propagator rwa_propagator(const TransitionSet& transitions, const RectPulse& pulse,
                          double zeta12) {
  pulse.validate();
  const auto det = detune(transitions, pulse.omegaD, pulse.amp);
  Propagator u;
  u.matrix = Eigen::MatrixXcd::Zero(8, 8);
  for (int k = 0; k < 4; ++k) {
    const auto label = ComputationalLabel::from_index(k);
    Eigen::Matrix2cd blk =
        rabi_propagator(det[k].deltaMN, pulse.amp, pulse.tau, pulse.carrierPhase);
    if (zeta12 != 0.0) {
      const double s12 = sign_of(label.m) * sign_of(label.n);
      blk *= std::exp(-kI * (0.25 * zeta12 * s12 * pulse.tau));
    }
    u.matrix.block<2, 2>(2 * k, 2 * k) = blk;
  }
  return u;
}

Propagator rwa_propagator(const DeviceParams& params, const RectPulse& pulse) {
  return rwa_propagator(transitions_from(params), pulse, params.zeta12);
}

Propagator labframe_propagator(const DeviceParams& params, const RectPulse& pulse,
                               int stepsPerDrivePeriod) {
  params.validate();
  pulse.validate();
  if (stepsPerDrivePeriod < 40) {
    throw ConfigError("labframe_propagator: stepsPerDrivePeriod must be >= 40");
  }
  if (!(pulse.omegaD > 0.0)) {
    throw ConfigError("labframe_propagator: drive frequency must be positive");
  }

  const auto freqs = subspace_frequencies(params);
  const double drivePeriod = kTwoPi / pulse.omegaD;
  const int nSteps = std::max<int>(
      1, static_cast<int>(std::ceil(pulse.tau / drivePeriod)) * stepsPerDrivePeriod);
  const double h = pulse.tau / nSteps;

  // Fourth-order commutator-free Magnus: two Gauss-Legendre samples per step,
  // each factor a closed-form SU(2) exponential.
  const double root3 = std::sqrt(3.0);
  const double c1 = 0.5 - root3 / 6.0;
  const double c2 = 0.5 + root3 / 6.0;
  const double wPlus = 0.25 + root3 / 6.0;
  const double wMinus = 0.25 - root3 / 6.0;

  Propagator u;
  u.matrix = Eigen::MatrixXcd::Zero(8, 8);

  for (int k = 0; k < 4; ++k) {
    const auto label = ComputationalLabel::from_index(k);
    const double s1 = sign_of(label.m);
    const double s2 = sign_of(label.n);
    // Subspace Hamiltonian: q I + (w_mn/2) sigma_z + amp cos(wd t + ph) sigma_x.
    const double q = 0.5 * params.omega1 * s1 + 0.5 * params.omega2 * s2 +
                     0.25 * params.zeta12 * s1 * s2;
    const double wmn = freqs[k].omegaMN;

    Eigen::Matrix2cd blk = Eigen::Matrix2cd::Identity();
    if (pulse.tau > 0.0) {
      for (int i = 0; i < nSteps; ++i) {
        const double t0 = i * h;
        const double d1 =
            pulse.amp * std::cos(pulse.omegaD * (t0 + c1 * h) + pulse.carrierPhase);
        const double d2 =
            pulse.amp * std::cos(pulse.omegaD * (t0 + c2 * h) + pulse.carrierPhase);
        // First factor weights the earlier node, second the later one.
        const Eigen::Matrix2cd e1 =
            su2_exp(h * 0.5 * q, h * (wPlus * d1 + wMinus * d2), 0.0,
                    h * 0.25 * wmn);
        const Eigen::Matrix2cd e2 =
            su2_exp(h * 0.5 * q, h * (wMinus * d1 + wPlus * d2), 0.0,
                    h * 0.25 * wmn);
        blk = (e2 * e1 * blk).eval();
      }
    }

    // Rotating frame of the bare qubits and the drive: V = exp(+i H0 t),
    // H0 = q_bare I + (omegaD/2) sigma_z with q_bare excluding zeta12.
    const double qBare = 0.5 * params.omega1 * s1 + 0.5 * params.omega2 * s2;
    const Eigen::Matrix2cd frame =
        su2_exp(-pulse.tau * qBare, 0.0, 0.0, -0.5 * pulse.tau * pulse.omegaD);
    u.matrix.block<2, 2>(2 * k, 2 * k) = frame * blk;
  }
  return u;
}

}  // namespace fluxcz
