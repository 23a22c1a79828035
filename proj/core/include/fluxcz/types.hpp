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

#ifndef FLUXCZ_TYPES_HPP
#define FLUXCZ_TYPES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace fluxcz {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kPi = std::numbers::pi;

/// Internal unit convention: angular frequencies in rad/ns, times in ns.
/// File and CLI boundaries speak GHz / MHz and convert here.
inline constexpr double ghz_to_radns(double ghz) { return kTwoPi * ghz; }
inline constexpr double mhz_to_radns(double mhz) { return kTwoPi * 1e-3 * mhz; }
inline constexpr double radns_to_ghz(double w) { return w / kTwoPi; }
inline constexpr double radns_to_mhz(double w) { return 1e3 * w / kTwoPi; }

/// Wraps an angle to (-pi, pi].
inline double wrap_phase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

/// Distance between two angles modulo 2*pi.
inline double phase_distance(double a, double b) {
  return std::abs(wrap_phase(a - b));
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Effective frequencies and dispersive couplings of the two computational
/// qubits and the driven coupler. All values in rad/ns.
struct DeviceParams {
  double omega1 = 0.0;   // qubit 1 frequency
  double omega2 = 0.0;   // qubit 2 frequency
  double omegaC = 0.0;   // coupler frequency
  double zeta1c = 0.0;   // qubit1-coupler dispersive coupling
  double zeta2c = 0.0;   // qubit2-coupler dispersive coupling
  double zeta12 = 0.0;   // residual qubit-qubit coupling, usually 0

  void validate() const;
};

/// Rectangular microwave drive applied to the coupler.
struct RectPulse {
  double omegaD = 0.0;        // carrier frequency, rad/ns
  double amp = 0.0;           // drive amplitude, rad/ns
  double tau = 0.0;           // duration, ns
  double carrierPhase = 0.0;  // radians

  void validate() const;
};

/// Computational basis label (m, n) for qubits 1 and 2.
struct ComputationalLabel {
  int m = 0;
  int n = 0;

  /// Index in the fixed subspace ordering 00, 01, 10, 11.
  int index() const { return 2 * m + n; }
  static ComputationalLabel from_index(int k) { return {(k >> 1) & 1, k & 1}; }
  std::string str() const { return std::to_string(m) + std::to_string(n); }
};

/// Per-subspace drive bookkeeping: the state-dependent coupler frequency,
/// the detuning delta = omegaD - omegaMN, and the generalized Rabi frequency
/// omegaR = sqrt(delta^2 + amp^2).
struct SubspaceDetuning {
  ComputationalLabel label;
  double omegaMN = 0.0;
  double deltaMN = 0.0;
  double omegaR = 0.0;
};

/// Measured (or synthetic) coupler transition frequencies for the four
/// computational states. Unlike the dispersive model these are free values
/// and may violate the sum rule w00 + w11 = w01 + w10.
struct TransitionSet {
  double w00 = 0.0;
  double w01 = 0.0;
  double w10 = 0.0;
  double w11 = 0.0;
  std::array<double, 4> sigma{0.0, 0.0, 0.0, 0.0};  // optional std errors

  double operator[](int k) const {
    switch (k) {
      case 0: return w00;
      case 1: return w01;
      case 2: return w10;
      default: return w11;
    }
  }
  double& operator[](int k) {
    switch (k) {
      case 0: return w00;
      case 1: return w01;
      case 2: return w10;
      default: return w11;
    }
  }

  void validate() const;
};

/// Synthetic transition set with w10 = w01 = w00 + splitting and
/// w11 = w00 + 2*splitting, the exactly solvable case.
TransitionSet make_symmetric_transitions(double w00, double splitting);

/// Everything the simulator knows about one executed (or predicted) gate.
struct GateReport {
  std::array<double, 4> phases{};       // phi_mn, subspace order 00,01,10,11
  double condPhase = 0.0;               // wrapped to (-pi, pi]
  std::array<double, 4> residualPop{};  // leftover coupler excitation
  double fidelity = 0.0;                // average gate fidelity vs CZ
  std::array<double, 2> localZ{};       // optimal single-qubit Z corrections
};

enum class DesignMethod { kClosedForm, kOptimized };

struct PulseDesign {
  RectPulse pulse;
  GateReport predicted;
  DesignMethod method = DesignMethod::kClosedForm;
  bool converged = true;
};

inline const char* design_method_name(DesignMethod m) {
  return m == DesignMethod::kClosedForm ? "closed-form" : "optimized";
}

}  // namespace fluxcz

#endif  // FLUXCZ_TYPES_HPP
