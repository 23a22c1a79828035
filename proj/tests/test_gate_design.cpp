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

using namespace fluxcz;

namespace {

TransitionSet table_transitions() {
  TransitionSet t;
  t.w00 = ghz_to_radns(3.4098);
  t.w01 = ghz_to_radns(3.43605);
  t.w10 = ghz_to_radns(3.44009);
  t.w11 = ghz_to_radns(3.4660);
  return t;
}

}  // namespace

TEST_CASE("symmetric pulse: closed-form parameter values") {
  // Splitting of 30.3 MHz in angular units.
  const double split = mhz_to_radns(30.3);
  const TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.4098), split);
  const PulseDesign d = symmetric_pulse(t);
  CHECK(d.pulse.tau == std::sqrt(6.0) * kPi / split);
  CHECK(d.pulse.tau == doctest::Approx(40.42).epsilon(1e-3));
  CHECK(d.pulse.amp == std::sqrt(5.0 / 12.0) * split);
  CHECK(d.pulse.omegaD == doctest::Approx(ghz_to_radns(3.4098) + 0.5 * split));
}

TEST_CASE("symmetric pulse: exact CZ on symmetric transitions") {
  const TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(28.1));
  const PulseDesign d = symmetric_pulse(t);
  CHECK(d.predicted.fidelity > 1.0 - 1e-9);
  CHECK(phase_distance(d.predicted.condPhase, kPi) < 1e-9);
  for (double r : d.predicted.residualPop) CHECK(r < 1e-12);
}

TEST_CASE("symmetric pulse: whole Rabi cycles in every subspace") {
  const TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(25.0));
  const PulseDesign d = symmetric_pulse(t);
  const auto det = detune(t, d.pulse.omegaD, d.pulse.amp);
  CHECK(det[0].omegaR * d.pulse.tau == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(det[1].omegaR * d.pulse.tau == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(det[2].omegaR * d.pulse.tau == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(det[3].omegaR * d.pulse.tau == doctest::Approx(2.0 * kTwoPi).epsilon(1e-12));
}

TEST_CASE("symmetric pulse: rejects non-positive splitting") {
  TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(25.0));
  t.w10 = t.w00;
  CHECK_THROWS_AS(symmetric_pulse(t), ConfigError);
  t.w10 = t.w00 - mhz_to_radns(1.0);
  CHECK_THROWS_AS(symmetric_pulse(t), ConfigError);
}

TEST_CASE("gate report: zero pulse scores the identity against CZ") {
  RectPulse none;
  none.omegaD = ghz_to_radns(3.42);
  none.amp = 0.0;
  none.tau = 0.0;
  const GateReport rep = gate_report(table_transitions(), none);
  CHECK(rep.condPhase == 0.0);
  CHECK(rep.fidelity == doctest::Approx(0.4).epsilon(1e-12));
  for (double r : rep.residualPop) CHECK(r == 0.0);
}

TEST_CASE("gate report: table transitions under the recipe drive") {
  const TransitionSet t = table_transitions();
  const PulseDesign d = optimize_pulse(t, recipe_drive_frequency(t));
  CHECK(d.predicted.fidelity > 0.990);
  CHECK(d.predicted.fidelity < 0.994);
  CHECK(d.pulse.tau > 41.0);
  CHECK(d.pulse.tau < 45.0);
}

TEST_CASE("gate report: global frequency shift is a gauge") {
  const TransitionSet t = table_transitions();
  RectPulse pulse;
  pulse.omegaD = recipe_drive_frequency(t);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const GateReport base = gate_report(t, pulse);

  const double shift = mhz_to_radns(37.0);
  TransitionSet ts = t;
  for (int k = 0; k < 4; ++k) ts[k] += shift;
  RectPulse ps = pulse;
  ps.omegaD += shift;
  const GateReport shifted = gate_report(ts, ps);

  CHECK(shifted.fidelity == doctest::Approx(base.fidelity).epsilon(1e-12));
  CHECK(shifted.condPhase == doctest::Approx(base.condPhase).epsilon(1e-9));
  for (int k = 0; k < 4; ++k) {
    CHECK(shifted.residualPop[k] == doctest::Approx(base.residualPop[k]).epsilon(1e-9));
  }
}

TEST_CASE("gate report: local Z rotations are absorbed by the correction") {
  const TransitionSet t = table_transitions();
  RectPulse pulse;
  pulse.omegaD = recipe_drive_frequency(t);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const GateReport base = gate_report(t, pulse);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const double alpha = u(rng), beta = u(rng);
    Propagator doctored = rwa_propagator(t, pulse);
    for (int k = 0; k < 4; ++k) {
      const auto label = ComputationalLabel::from_index(k);
      const double s1 = label.m == 0 ? 1.0 : -1.0;
      const double s2 = label.n == 0 ? 1.0 : -1.0;
      doctored.matrix.block<2, 2>(2 * k, 2 * k) *=
          std::exp(std::complex<double>(0.0, alpha * s1 + beta * s2));
    }
    const GateReport rep = report_from_propagator(doctored);
    CHECK(std::abs(rep.fidelity - base.fidelity) < 1e-9);
  }
}

TEST_CASE("gate report: qubit exchange maps 01 and 10 into each other") {
  const TransitionSet t = table_transitions();
  RectPulse pulse;
  pulse.omegaD = recipe_drive_frequency(t);
  pulse.amp = mhz_to_radns(18.0);
  pulse.tau = 43.0;
  const GateReport base = gate_report(t, pulse);

  TransitionSet swapped = t;
  std::swap(swapped.w01, swapped.w10);
  const GateReport sw = gate_report(swapped, pulse);
  CHECK(sw.fidelity == doctest::Approx(base.fidelity).epsilon(1e-12));
  CHECK(sw.phases[1] == doctest::Approx(base.phases[2]).epsilon(1e-12));
  CHECK(sw.phases[2] == doctest::Approx(base.phases[1]).epsilon(1e-12));
}

TEST_CASE("wrapped phase arithmetic is branch-independent") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const double direct = wrap_phase(a - b - c + d);
    const double wrappedFirst =
        wrap_phase(wrap_phase(a) - wrap_phase(b) - wrap_phase(c) + wrap_phase(d));
    CHECK(phase_distance(direct, wrappedFirst) < 1e-9);
  }
}

TEST_CASE("wrap_phase lands in (-pi, pi]") {
  CHECK(wrap_phase(kPi) == kPi);
  CHECK(wrap_phase(-kPi) == kPi);
  CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(0.0) == 0.0);
}

TEST_CASE("optimize: symmetric seed is already the optimum") {
  const TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(28.1));
  const PulseDesign closed = symmetric_pulse(t);
  const PulseDesign opt = optimize_pulse(t);
  CHECK(opt.converged);
  CHECK(std::abs(opt.pulse.amp - closed.pulse.amp) / closed.pulse.amp < 1e-6);
  CHECK(std::abs(opt.pulse.tau - closed.pulse.tau) / closed.pulse.tau < 1e-6);
  CHECK(std::abs(opt.pulse.omegaD - closed.pulse.omegaD) / closed.pulse.omegaD < 1e-6);
}

TEST_CASE("optimize: near-symmetric sets reach the CZ point") {
  TransitionSet t;
  t.w00 = ghz_to_radns(3.4098);
  t.w11 = t.w00 + mhz_to_radns(56.2);
  const double mid = 0.5 * (t.w00 + t.w11);
  t.w10 = mid + 0.5 * mhz_to_radns(0.4);
  t.w01 = mid - 0.5 * mhz_to_radns(0.4);
  const PulseDesign d = optimize_pulse(t, recipe_drive_frequency(t));
  CHECK(d.converged);
  CHECK(phase_distance(d.predicted.condPhase, kPi) < 1e-3);
  for (double r : d.predicted.residualPop) CHECK(r < 1e-3);
}

TEST_CASE("optimize dominates the symmetric baseline on random mismatches") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    TransitionSet t;
    t.w00 = ghz_to_radns(3.41);
    const double d2 = mhz_to_radns(20.0 + 60.0 * u(rng));
    const double d1 = mhz_to_radns(8.0 * u(rng));
    t.w11 = t.w00 + d2;
    const double mid = t.w00 + 0.5 * d2;
    t.w10 = mid + 0.5 * d1;
    t.w01 = mid - 0.5 * d1;

    const PulseDesign symd = symmetric_pulse(t);
    const PulseDesign opt = optimize_pulse(t);
    CHECK(opt.predicted.fidelity >= symd.predicted.fidelity - 1e-12);
  }
}

TEST_CASE("optimize: invalid splitting is rejected") {
  TransitionSet t = make_symmetric_transitions(ghz_to_radns(3.41), mhz_to_radns(25.0));
  t.w11 = t.w00;
  CHECK_THROWS_AS(optimize_pulse(t, recipe_drive_frequency(t)), ConfigError);
}
