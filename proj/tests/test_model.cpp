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

#include <doctest.h>

#include <random>

#include "fluxcz/gate_design.hpp"
#include "fluxcz/model.hpp"
#include "oracles.hpp"

using namespace fluxcz;

namespace {

// Calibration-table fixture: measured transitions in GHz and the qubit
// frequencies of the demonstrated device.
TransitionSet table_transitions() {
  TransitionSet t;
  t.w00 = ghz_to_radns(3.4098);
  t.w01 = ghz_to_radns(3.43605);
  t.w10 = ghz_to_radns(3.44009);
  t.w11 = ghz_to_radns(3.4660);
  t.sigma = {mhz_to_radns(0.1), mhz_to_radns(0.08), mhz_to_radns(0.07),
             mhz_to_radns(0.2)};
  return t;
}

DeviceParams table_device() {
  return fit_device_params(table_transitions(), ghz_to_radns(0.66964),
                           ghz_to_radns(0.69435));
}

}  // namespace

TEST_CASE("subspace frequencies: decoupled limit") {
  DeviceParams p;
  p.omega1 = ghz_to_radns(0.67);
  p.omega2 = ghz_to_radns(0.69);
  p.omegaC = ghz_to_radns(3.44);
  const auto f = subspace_frequencies(p);
  for (const auto& s : f) CHECK(s.omegaMN == p.omegaC);
}

TEST_CASE("subspace frequencies: fitted table device") {
  // Least-squares inversion of the dispersive model from the measured
  // transitions; expected values frozen from the fit itself.
  const DeviceParams dev = table_device();
  CHECK(radns_to_ghz(dev.omegaC) == doctest::Approx(3.437985).epsilon(1e-12));
  CHECK(radns_to_mhz(dev.zeta1c) == doctest::Approx(-30.12).epsilon(1e-9));
  CHECK(radns_to_mhz(dev.zeta2c) == doctest::Approx(-26.08).epsilon(1e-9));

  const TransitionSet fitted = transitions_from(dev);
  CHECK(radns_to_ghz(fitted.w00) == doctest::Approx(3.409885).epsilon(1e-12));
  CHECK(radns_to_ghz(fitted.w11) == doctest::Approx(3.466085).epsilon(1e-12));

  // The projection residual is orthogonal to the model: pattern (1,-1,-1,1).
  const TransitionSet meas = table_transitions();
  const double r00 = meas.w00 - fitted.w00;
  const double r01 = meas.w01 - fitted.w01;
  const double r10 = meas.w10 - fitted.w10;
  const double r11 = meas.w11 - fitted.w11;
  CHECK(r00 == doctest::Approx(r11).epsilon(1e-9));
  CHECK(r01 == doctest::Approx(r10).epsilon(1e-9));
  CHECK(r00 == doctest::Approx(-r01).epsilon(1e-9));
}

TEST_CASE("subspace frequencies: label swap symmetry at equal couplings") {
  DeviceParams p;
  p.omega1 = ghz_to_radns(0.67);
  p.omega2 = ghz_to_radns(0.69);
  p.omegaC = ghz_to_radns(3.44);
  p.zeta1c = mhz_to_radns(-27.0);
  p.zeta2c = mhz_to_radns(-27.0);
  const auto f = subspace_frequencies(p);
  CHECK(f[1].omegaMN == f[2].omegaMN);  // 01 vs 10
}

TEST_CASE("subspace frequencies: sum rule holds bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    DeviceParams p;
    p.omega1 = 2.0 + u(rng);
    p.omega2 = 2.0 + u(rng);
    p.omegaC = 18.0 + 6.0 * u(rng);
    p.zeta1c = 0.5 * (u(rng) - 0.5);
    p.zeta2c = 0.5 * (u(rng) - 0.5);
    const auto f = subspace_frequencies(p);
    CHECK((f[0].omegaMN + f[3].omegaMN) - (f[1].omegaMN + f[2].omegaMN) == 0.0);
  }
}

TEST_CASE("detune fills the generalized Rabi frequency consistently") {
  const auto det = detune(table_transitions(), ghz_to_radns(3.42), mhz_to_radns(18.0));
  for (const auto& d : det) {
    CHECK(d.omegaR == std::sqrt(d.deltaMN * d.deltaMN +
                                mhz_to_radns(18.0) * mhz_to_radns(18.0)));
    CHECK(d.omegaR >= std::abs(d.deltaMN));
  }
}

TEST_CASE("rabi state: resonant pi pulse transfers fully") {
  const double amp = mhz_to_radns(20.0);
  const double t = kPi / amp;
  const Eigen::Vector2cd psi = rabi_state(0.0, amp, t);
  CHECK(std::abs(psi[0]) < 1e-12);
  CHECK(std::abs(psi[1] - std::complex<double>(0.0, -1.0)) < 1e-12);
}

TEST_CASE("rabi state: integer Rabi cycle leaves phase pi") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double delta = 0.3 * u(rng);
    const double amp = 0.05 + 0.2 * std::abs(u(rng));
    const double omegaR = std::hypot(delta, amp);
    const Eigen::Vector2cd psi = rabi_state(delta, amp, kTwoPi / omegaR);
    CHECK(std::abs(psi[0] - std::complex<double>(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(psi[1]) < 1e-12);
  }
}

TEST_CASE("rabi state: zero amplitude and zero detuning is the identity") {
  const Eigen::Vector2cd psi = rabi_state(0.0, 0.0, 17.0);
  CHECK(psi[0] == std::complex<double>(1.0, 0.0));
  CHECK(psi[1] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("rabi state: normalization and periodicity properties") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double delta = 0.5 * u(rng);
    const double amp = 0.3 * std::abs(u(rng));
    const double t = 60.0 * std::abs(u(rng));
    const Eigen::Vector2cd psi = rabi_state(delta, amp, t);
    CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-12);

    const double omegaR = std::hypot(delta, amp);
    if (omegaR > 1e-6) {
      const Eigen::Vector2cd shifted = rabi_state(delta, amp, t + kTwoPi / omegaR);
      CHECK((shifted + psi).norm() < 1e-9);  // global sign flip
    }
  }
}

TEST_CASE("rabi state matches the integrated rotating-frame Hamiltonian") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double delta = 0.6 * u(rng);
    const double amp = 0.4 * std::abs(u(rng));
    const double t = 5.0 + 45.0 * std::abs(u(rng));
    const Eigen::Vector2cd closed = rabi_state(delta, amp, t);
    const Eigen::Vector2cd integrated = oracles::rabi_reference(delta, amp, t, 40000);
    CHECK((closed - integrated).norm() < 1e-8);
  }
}

TEST_CASE("rwa propagator: zero amplitude gives pure detuning phases") {
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.42);
  pulse.amp = 0.0;
  pulse.tau = 37.0;
  const TransitionSet t = table_transitions();
  const Propagator u = rwa_propagator(t, pulse);
  const auto det = detune(t, pulse.omegaD, 0.0);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix2cd blk = u.block(ComputationalLabel::from_index(k));
    const std::complex<double> expected =
        std::exp(std::complex<double>(0.0, 0.5 * det[k].deltaMN * pulse.tau));
    CHECK(std::abs(blk(0, 0) - expected) < 1e-12);
    CHECK(std::abs(blk(1, 0)) == 0.0);
  }
}

TEST_CASE("rwa propagator: symmetric pulse runs one cycle, doubly detuned two") {
  const TransitionSet sym =
      make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(28.0));
  const PulseDesign d = symmetric_pulse(sym);
  const Propagator u = rwa_propagator(sym, d.pulse);
  // Full cycles: block = -I after one, +I after two.
  for (int k : {0, 1, 2}) {
    const Eigen::Matrix2cd blk = u.block(ComputationalLabel::from_index(k));
    CHECK((blk + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  }
  const Eigen::Matrix2cd blk11 = u.block(ComputationalLabel{1, 1});
  CHECK((blk11 - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("rwa propagator: unitary, block structure exact") {
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.423);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const Propagator u = rwa_propagator(table_transitions(), pulse);
  CHECK(u.unitarity_defect() < 1e-12);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (r / 2 != c / 2) CHECK(std::abs(u.matrix(r, c)) == 0.0);
    }
  }
}

TEST_CASE("carrier phase does not move subspace phases or residuals") {
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.423);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const GateReport base = gate_report(table_transitions(), pulse);
  pulse.carrierPhase = 1.234;
  const GateReport shifted = gate_report(table_transitions(), pulse);
  for (int k = 0; k < 4; ++k) {
    CHECK(shifted.phases[k] == doctest::Approx(base.phases[k]).epsilon(1e-12));
    CHECK(shifted.residualPop[k] == doctest::Approx(base.residualPop[k]).epsilon(1e-12));
  }
}

TEST_CASE("lab-frame propagator: zero amplitude reproduces free evolution") {
  const DeviceParams dev = table_device();
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.42);
  pulse.amp = 0.0;
  pulse.tau = 50.0;
  const Propagator lab = labframe_propagator(dev, pulse, 64);
  const Propagator rwa = rwa_propagator(transitions_from(dev), pulse);
  CHECK((lab.matrix - rwa.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("lab-frame propagator: refuses too-coarse stepping") {
  const DeviceParams dev = table_device();
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.42);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 10.0;
  CHECK_THROWS_AS(labframe_propagator(dev, pulse, 39), ConfigError);
}

TEST_CASE("lab-frame propagator: designed pulse agrees with RWA fidelity") {
  const DeviceParams dev = table_device();
  const TransitionSet t = transitions_from(dev);
  const PulseDesign design = optimize_pulse(t, recipe_drive_frequency(t));
  // Counter-rotating scale (amp / 2 omegaD)^2 is ~1e-5 here.
  CHECK(design.pulse.amp / design.pulse.omegaD < 0.01);

  const Propagator lab = labframe_propagator(dev, design.pulse);
  const GateReport labReport = report_from_propagator(lab);
  CHECK(std::abs(labReport.fidelity - design.predicted.fidelity) < 1e-3);
}

TEST_CASE("lab-frame propagator: self-convergence under step doubling") {
  const DeviceParams dev = table_device();
  const TransitionSet t = transitions_from(dev);
  const PulseDesign design = optimize_pulse(t, recipe_drive_frequency(t));
  const Propagator coarse = labframe_propagator(dev, design.pulse, 256);
  const Propagator fine = labframe_propagator(dev, design.pulse, 512);
  CHECK((coarse.matrix - fine.matrix).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(coarse.unitarity_defect() < 1e-10);
}

TEST_CASE("lab-frame propagator: RWA error shrinks with amplitude") {
  const DeviceParams dev = table_device();
  const TransitionSet t = transitions_from(dev);
  RectPulse pulse;
  pulse.omegaD = recipe_drive_frequency(t);
  pulse.tau = 43.0;
  double prev = 1e9;
  for (const double ampMHz : {18.0, 9.0, 4.5}) {
    pulse.amp = mhz_to_radns(ampMHz);
    const Propagator lab = labframe_propagator(dev, pulse, 128);
    const Propagator rwa = rwa_propagator(t, pulse);
    const double diff = (lab.matrix - rwa.matrix).norm();
    CHECK(diff < prev);
    prev = diff;
  }
}

TEST_CASE("lab-frame propagator honors the residual qubit-qubit coupling") {
  DeviceParams dev = table_device();
  dev.zeta12 = mhz_to_radns(0.3);
  RectPulse pulse;
  pulse.omegaD = ghz_to_radns(3.4238);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const Propagator lab = labframe_propagator(dev, pulse, 128);
  const Propagator rwa = rwa_propagator(transitions_from(dev), pulse, dev.zeta12);
  // zeta12 enters both paths identically; agreement stays at the RWA level.
  CHECK((lab.matrix - rwa.matrix).cwiseAbs().maxCoeff() < 5e-3);
  const GateReport withZ = report_from_propagator(lab);

  dev.zeta12 = 0.0;
  const GateReport withoutZ = report_from_propagator(labframe_propagator(dev, pulse, 128));
  // The conditional phase shifts by zeta12 * tau.
  const double shift = phase_distance(withZ.condPhase, withoutZ.condPhase);
  CHECK(shift == doctest::Approx(mhz_to_radns(0.3) * pulse.tau).epsilon(0.02));
}

TEST_CASE("device params validation") {
  DeviceParams p;
  p.omega1 = ghz_to_radns(0.67);
  p.omega2 = ghz_to_radns(0.69);
  p.omegaC = ghz_to_radns(0.5);  // below the qubits
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.omegaC = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
