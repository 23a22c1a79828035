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

// Independent reference computations used only by tests. These deliberately
// avoid the closed-form code paths they are checking: time evolution is a
// plain fixed-step RK4 on the Schrodinger equation, averages are Monte
// Carlo over Haar-random states.

#ifndef FLUXCZ_TESTS_ORACLES_HPP
#define FLUXCZ_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>

namespace oracles {

using Cplx = std::complex<double>;

/// psi' = -i H(t) psi integrated by classic RK4 with `steps` fixed steps.
inline Eigen::VectorXcd rk4_schrodinger(
    const std::function<Eigen::MatrixXcd(double)>& hamiltonian,
    Eigen::VectorXcd psi, double tEnd, int steps) {
  const Cplx minusI(0.0, -1.0);
  const double h = tEnd / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const Eigen::VectorXcd k1 = minusI * (hamiltonian(t) * psi);
    const Eigen::VectorXcd k2 = minusI * (hamiltonian(t + 0.5 * h) * (psi + 0.5 * h * k1));
    const Eigen::VectorXcd k3 = minusI * (hamiltonian(t + 0.5 * h) * (psi + 0.5 * h * k2));
    const Eigen::VectorXcd k4 = minusI * (hamiltonian(t + h) * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

/// Static two-level Hamiltonian -delta/2 sigma_z + amp/2 sigma_x, evolved
/// from |0>. The reference for the closed-form Rabi solution.
inline Eigen::Vector2cd rabi_reference(double delta, double amp, double t, int steps) {
  Eigen::Matrix2cd h;
  h << -0.5 * delta, 0.5 * amp, 0.5 * amp, 0.5 * delta;
  Eigen::VectorXcd psi(2);
  psi << 1.0, 0.0;
  const Eigen::VectorXcd out =
      rk4_schrodinger([&](double) { return h; }, psi, t, steps);
  return Eigen::Vector2cd(out[0], out[1]);
}

/// Haar-random state of dimension d.
inline Eigen::VectorXcd haar_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v[i] = Cplx(g(rng), g(rng));
  return v / v.norm();
}

/// Monte Carlo state-average fidelity E |<psi| V^dag U |psi>|^2 mapped to the
/// average gate fidelity convention is not needed; callers compare against
/// the analytic form of the same average.
inline double mc_state_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                                int samples, std::mt19937_64& rng) {
  const Eigen::MatrixXcd a = v.adjoint() * u;
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXcd psi = haar_state(static_cast<int>(u.rows()), rng);
    acc += std::norm((psi.adjoint() * (a * psi))(0, 0));
  }
  return acc / samples;
}

}  // namespace oracles

#endif  // FLUXCZ_TESTS_ORACLES_HPP
