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

#ifndef FLUXCZ_GATE_DESIGN_HPP
#define FLUXCZ_GATE_DESIGN_HPP

#include <optional>

#include "fluxcz/model.hpp"
#include "fluxcz/types.hpp"

namespace fluxcz {

/// Subspace phases, conditional phase, leftover coupler population and the
/// average gate fidelity against CZ for a pulse executed under the rotating
/// wave model.
///
/// The fidelity is the average gate fidelity on the computational subspace,
///   F = (Tr(M^dag M) + |Tr(V^dag M)|^2) / (D (D + 1)),  D = 4,
/// where M is the 4x4 diagonal of coupler-ground amplitudes (a sub-unitary
/// when population is left on the coupler) and V = diag(1,1,1,-1), after
/// applying the closed-form optimal single-qubit Z corrections that align
/// the 00, 01 and 10 phases.
GateReport gate_report(const TransitionSet& transitions, const RectPulse& pulse,
                       double zeta12 = 0.0);
GateReport gate_report(const DeviceParams& params, const RectPulse& pulse);

/// Same report extracted from an existing 8-dim block-diagonal propagator
/// (e.g. the lab-frame one).
GateReport report_from_propagator(const Propagator& u);

/// Target drive frequency used for asymmetric transition sets,
/// (w11 + 3 w00) / 4.
double recipe_drive_frequency(const TransitionSet& transitions);

/// Closed-form CZ pulse for transitions treated as symmetric:
///   omegaD = (w10 + w00)/2, amp = sqrt(5/12) (w10 - w00),
///   tau = sqrt(6) pi / (w10 - w00).
/// Drives one full Rabi cycle in the 00/01/10 subspaces and two in 11.
/// Throws ConfigError when w10 <= w00.
PulseDesign symmetric_pulse(const TransitionSet& transitions);

/// Maximizes the gate_report fidelity by derivative-free pattern search
/// seeded at the closed form. With fixedDriveFreq the search runs over
/// (amp, tau) at that carrier; otherwise omegaD is optimized as well.
/// converged is false when the search failed to do at least as well as its
/// symmetric-seed baseline.
PulseDesign optimize_pulse(const TransitionSet& transitions,
                           std::optional<double> fixedDriveFreq = std::nullopt);

}  // namespace fluxcz

#endif  // FLUXCZ_GATE_DESIGN_HPP
