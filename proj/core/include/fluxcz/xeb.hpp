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

#ifndef FLUXCZ_XEB_HPP
#define FLUXCZ_XEB_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fluxcz/ptm.hpp"
#include "fluxcz/types.hpp"

namespace fluxcz {

/// Error model for the benchmarking simulations. All channels are CPTP.
struct NoiseModel {
  double depol1 = 0.0;  // two-qubit depolarizing prob per Clifford layer
  double depol2 = 0.0;  // depolarizing prob per interleaved two-qubit gate
  double phaseError = 0.0;  // CZ conditional phase is pi + phaseError
  std::array<double, 4> couplerLeak{0.0, 0.0, 0.0, 0.0};

  void validate() const;

  /// Noisy target gate: CPhase(pi + phaseError), then depol2, then the
  /// coupler-leak dephasing.
  Channel target_gate_channel() const;
  Channel clifford_layer_noise() const;

  /// Couples the benchmark to a simulated design: the coherent phase error
  /// and the leak populations come straight from its GateReport.
  static NoiseModel from_gate_report(const GateReport& report, double depol1,
                                     double depol2);
};

struct XebConfig {
  std::vector<int> depths;
  int setsPerDepth = 150;
  std::uint64_t shots = 10000;  // 0 = infinite-averaging limit
  std::uint64_t seed = 1;
  unsigned workers = 1;

  static std::vector<int> default_depths();  // up to 100
};

/// One interleaved circuit instance, kept so the conditional phase can be
/// re-estimated against the same sampled data.
struct XebCircuitRecord {
  int depth = 0;
  std::vector<std::uint8_t> cliffs1;
  std::vector<std::uint8_t> cliffs2;
  std::array<double, 4> freq{};  // observed bitstring frequencies
};

struct XebRun {
  std::vector<int> depths;
  int setsPerDepth = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  NoiseModel noise;

  std::vector<double> refFidelities;  // per depth, cross-entropy estimator
  std::vector<double> intFidelities;
  std::vector<double> refStderr;
  std::vector<double> intStderr;

  double aRef = 0.0, pRef = 0.0, pRefErr = 0.0;
  double aInt = 0.0, pInt = 0.0, pIntErr = 0.0;
  double gateFidelity = 0.0;  // Eq.-of-merit from pInt/pRef

  /// Retained for error_budget's phase refit; not serialized.
  std::vector<XebCircuitRecord> interleavedRecords;
};

/// Density-matrix simulation of the two-qubit XEB experiment: per depth,
/// setsPerDepth random single-qubit Clifford sequences are run with and
/// without the interleaved noisy target gate (sharing the Clifford draws),
/// bitstrings are sampled, and the per-depth depolarization fidelity is the
/// ratio-of-sums linear cross-entropy estimator
///   F_dep = sum_s (D <P_ideal>_counts - 1) / sum_s (D sum_x P_ideal^2 - 1).
/// Both decays are fitted as a p^m. Deterministic for fixed seed and any
/// worker count.
XebRun simulate_xeb(const NoiseModel& noise, const XebConfig& config);

/// Depolarization-to-fidelity conversion F = p + (1 - p) / 2^n applied to
/// p = pInt / pRef. Rejects pInt > pRef.
double xeb_fidelity(double pRef, double pInt, int nQubits);

/// Reference-decay fidelity of a single-qubit Clifford layer under both
/// dimension conventions (the two-qubit layer, D = 4, and per qubit, D = 2).
struct CliffordLayerFidelity {
  double d4 = 0.0;
  double d2 = 0.0;
};
CliffordLayerFidelity clifford_layer_fidelity(double pRef);

/// Average gate fidelity of CPhase(theta) against CZ, (14 + 6 cos(theta -
/// pi)) / 20, and its depolarization-equivalent error (1 - F) * D / (D - 1).
double cphase_vs_cz_fidelity(double theta);
double depol_error_from_fidelity(double avgFidelity, int dim = 4);

struct ErrorBudget {
  double theta = 0.0;     // best-fit target phase from the XEB refit
  double eps1 = 0.0;      // 1 - pRef
  double epsTheta = 0.0;  // from the non-pi conditional phase
  double epsD = 0.0;      // decoherence scaled by gate duration
  double epsO = 0.0;      // remainder
  double epsTotal = 0.0;  // 1 - pInt/pRef
  bool consistent = true; // epsO >= 0
};

/// Re-estimates the target phase by maximizing the fitted interleaved decay
/// over CPhase(theta) hypotheses (grid [0.9 pi, 1.1 pi], step 1e-3 pi), then
/// splits the total error into phase, decoherence and remainder parts.
ErrorBudget error_budget(const XebRun& run, double singleQubitDur = 26.6,
                         double czDur = 44.0, unsigned workers = 1);

/// Budget arithmetic alone, for a known phase.
ErrorBudget error_budget_from(double theta, double pRef, double pInt,
                              double singleQubitDur = 26.6, double czDur = 44.0);

}  // namespace fluxcz

#endif  // FLUXCZ_XEB_HPP
