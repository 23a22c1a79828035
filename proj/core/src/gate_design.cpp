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

#include "fluxcz/gate_design.hpp"

#include <cmath>
#include <functional>

namespace fluxcz {

namespace {

GateReport report_from_blocks(const std::array<Eigen::Matrix2cd, 4>& blocks) {
  GateReport rep;
  std::array<double, 4> mag{};
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> g = blocks[k](0, 0);
    mag[k] = std::abs(g);
    rep.phases[k] = (mag[k] > 0.0) ? std::arg(g) : 0.0;
    rep.residualPop[k] = std::norm(blocks[k](1, 0));
  }
  const double thetaRaw =
      rep.phases[0] - rep.phases[1] - rep.phases[2] + rep.phases[3];
  rep.condPhase = wrap_phase(thetaRaw);

  // Closed-form local Z corrections align 01 and 10 with 00; the remaining
  // coherent mismatch sits entirely in the conditional phase.
  rep.localZ[0] = wrap_phase(rep.phases[0] - rep.phases[2]);  // qubit 1
  rep.localZ[1] = wrap_phase(rep.phases[0] - rep.phases[1]);  // qubit 2

  const double trMM = mag[0] * mag[0] + mag[1] * mag[1] + mag[2] * mag[2] +
                      mag[3] * mag[3];
  const std::complex<double> tr =
      mag[0] + mag[1] + mag[2] -
      mag[3] * std::exp(std::complex<double>(0.0, thetaRaw));
  rep.fidelity = (trMM + std::norm(tr)) / 20.0;
  return rep;
}

struct PatternSearchResult {
  Eigen::VectorXd x;
  double value = 0.0;
  bool converged = false;
};

/// Coordinate pattern search (compass search) maximizing fn. Steps are
/// relative to scale; the search stops once every relative step has shrunk
/// below stepFloor.
PatternSearchResult pattern_search(const std::function<double(const Eigen::VectorXd&)>& fn,
                                   Eigen::VectorXd x0, Eigen::VectorXd scale,
                                   double initialStep = 0.1,
                                   double stepFloor = 1e-8,
                                   int maxEvals = 200000) {
  PatternSearchResult res;
  res.x = x0;
  res.value = fn(x0);
  double step = initialStep;
  int evals = 1;
  const int dims = static_cast<int>(x0.size());

  while (evals < maxEvals) {
    bool improved = false;
    for (int j = 0; j < dims; ++j) {
      for (const double dir : {+1.0, -1.0}) {
        Eigen::VectorXd cand = res.x;
        cand[j] += dir * step * scale[j];
        const double v = fn(cand);
        ++evals;
        if (v > res.value) {
          res.value = v;
          res.x = cand;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < stepFloor) {
        res.converged = true;
        break;
      }
    }
  }
  return res;
}

}  // namespace

GateReport gate_report(const TransitionSet& transitions, const RectPulse& pulse,
                       double zeta12) {
  pulse.validate();
  const auto det = detune(transitions, pulse.omegaD, pulse.amp);
  std::array<Eigen::Matrix2cd, 4> blocks;
  for (int k = 0; k < 4; ++k) {
    blocks[k] = rabi_propagator(det[k].deltaMN, pulse.amp, pulse.tau,
                                pulse.carrierPhase);
    if (zeta12 != 0.0) {
      const int s12 = ((k == 0 || k == 3) ? 1 : -1);
      blocks[k] *= std::exp(std::complex<double>(0.0, -0.25 * zeta12 * s12 * pulse.tau));
    }
  }
  return report_from_blocks(blocks);
}

GateReport gate_report(const DeviceParams& params, const RectPulse& pulse) {
  return gate_report(transitions_from(params), pulse, params.zeta12);
}

GateReport report_from_propagator(const Propagator& u) {
  std::array<Eigen::Matrix2cd, 4> blocks;
  for (int k = 0; k < 4; ++k) blocks[k] = u.block(ComputationalLabel::from_index(k));
  return report_from_blocks(blocks);
}

double recipe_drive_frequency(const TransitionSet& transitions) {
  return 0.25 * (transitions.w11 + 3.0 * transitions.w00);
}

PulseDesign symmetric_pulse(const TransitionSet& transitions) {
  transitions.validate();
  const double split = transitions.w10 - transitions.w00;
  if (!(split > 0.0)) {
    throw ConfigError("symmetric_pulse: w10 - w00 must be positive");
  }
  PulseDesign d;
  d.method = DesignMethod::kClosedForm;
  d.pulse.omegaD = 0.5 * (transitions.w10 + transitions.w00);
  d.pulse.amp = std::sqrt(5.0 / 12.0) * split;
  d.pulse.tau = std::sqrt(6.0) * kPi / split;
  d.predicted = gate_report(transitions, d.pulse);
  return d;
}

PulseDesign optimize_pulse(const TransitionSet& transitions,
                           std::optional<double> fixedDriveFreq) {
  transitions.validate();

  // Seed at the closed form. Under the fixed-carrier protocol the
  // symmetric-equivalent splitting is (w11 - w00)/2.
  PulseDesign seed;
  double seedBaseline;
  if (fixedDriveFreq) {
    const double split = 0.5 * (transitions.w11 - transitions.w00);
    if (!(split > 0.0)) {
      throw ConfigError("optimize_pulse: w11 - w00 must be positive");
    }
    seed.pulse.omegaD = *fixedDriveFreq;
    seed.pulse.amp = std::sqrt(5.0 / 12.0) * split;
    seed.pulse.tau = std::sqrt(6.0) * kPi / split;
    seed.predicted = gate_report(transitions, seed.pulse);
    seedBaseline = seed.predicted.fidelity;
  } else {
    seed = symmetric_pulse(transitions);
    seedBaseline = seed.predicted.fidelity;
  }

  const bool freeCarrier = !fixedDriveFreq.has_value();
  const int dims = freeCarrier ? 3 : 2;
  Eigen::VectorXd x0(dims), scale(dims);
  x0[0] = seed.pulse.amp;
  x0[1] = seed.pulse.tau;
  scale[0] = seed.pulse.amp;
  scale[1] = seed.pulse.tau;
  if (freeCarrier) {
    x0[2] = seed.pulse.omegaD;
    // The useful carrier range is a few splittings wide, not a few GHz.
    scale[2] = transitions.w11 - transitions.w00;
  }

  auto toPulse = [&](const Eigen::VectorXd& x) {
    RectPulse p;
    p.amp = x[0];
    p.tau = x[1];
    p.omegaD = freeCarrier ? x[2] : *fixedDriveFreq;
    return p;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    if (!(x[0] > 0.0) || !(x[1] > 0.0)) return -1.0;
    return gate_report(transitions, toPulse(x)).fidelity;
  };

  const PatternSearchResult ps = pattern_search(objective, x0, scale);

  PulseDesign best;
  best.method = DesignMethod::kOptimized;
  best.pulse = toPulse(ps.x);
  best.predicted = gate_report(transitions, best.pulse);
  best.converged = ps.converged && best.predicted.fidelity >= seedBaseline;
  return best;
}

}  // namespace fluxcz
