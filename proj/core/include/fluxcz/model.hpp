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

#ifndef FLUXCZ_MODEL_HPP
#define FLUXCZ_MODEL_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "fluxcz/types.hpp"

namespace fluxcz {

/// Unitary time evolution over the three-fluxonium register. dim is 2 for a
/// single coupler subspace, 8 for the full |q1 q2 c> register with basis
/// index 4*m + 2*n + l (l = coupler level). The 8-dim propagators produced
/// here are block diagonal in the four computational subspaces.
struct Propagator {
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }

  /// max |U^dag U - I|, should be at rounding level for every code path.
  double unitarity_defect() const;

  /// 2x2 coupler block of an 8-dim propagator for computational state (m,n).
  Eigen::Matrix2cd block(ComputationalLabel label) const;
};

/// State-dependent coupler frequencies w_mn = wC + (-1)^m zeta1c/2
/// + (-1)^n zeta2c/2, returned in subspace order 00, 01, 10, 11 with the
/// detuning fields left at zero. The four values satisfy
/// w00 + w11 == w01 + w10 bit-exactly.
std::array<SubspaceDetuning, 4> subspace_frequencies(const DeviceParams& params);

/// Same frequencies packaged as a TransitionSet.
TransitionSet transitions_from(const DeviceParams& params);

/// Completes the per-subspace bookkeeping for a given drive frequency:
/// delta_mn = omegaD - w_mn and omegaR = sqrt(delta^2 + amp^2).
std::array<SubspaceDetuning, 4> detune(const TransitionSet& transitions,
                                       double omegaD, double amp);

/// Inverts the dispersive model from four measured transition frequencies by
/// (unweighted) least squares; the qubit frequencies are pass-through. The
/// residual orthogonal to the model is the sum-rule violation.
DeviceParams fit_device_params(const TransitionSet& transitions,
                               double omega1, double omega2);

/// Coupler state after a resonant-frame rectangular pulse of duration t,
/// starting from |0>:
///   psi = ( cos(x) + i (delta/omegaR) sin(x),  -i (amp/omegaR) sin(x) ),
/// x = omegaR t / 2. delta = amp = 0 evolves as the identity. The phase of
/// the first component is the accumulated subspace phase phi_mn.
Eigen::Vector2cd rabi_state(double delta, double amp, double t);
Eigen::Vector2cd rabi_state(const SubspaceDetuning& detuning, double amp, double t);

/// Full 2x2 rotating-frame propagator for one subspace,
/// exp(-i t [ -delta/2 sigma_z + amp/2 (cos(ph) sigma_x + sin(ph) sigma_y) ]).
/// Its first column is rabi_state for ph = 0.
Eigen::Matrix2cd rabi_propagator(double delta, double amp, double t,
                                 double carrierPhase = 0.0);

/// Block-diagonal 8x8 propagator in the frame rotating with the bare qubits
/// and the drive. Each 2x2 block is the closed-form subspace evolution; a
/// nonzero zeta12 multiplies block (m,n) by exp(-i zeta12/4 (-1)^(m+n) tau).
Propagator rwa_propagator(const TransitionSet& transitions, const RectPulse& pulse,
                          double zeta12 = 0.0);
Propagator rwa_propagator(const DeviceParams& params, const RectPulse& pulse);

/// Propagator of the full time-dependent Hamiltonian with the drive term
/// amp * cos(omegaD t + carrierPhase), i.e. without the rotating wave
/// approximation, transformed into the same rotating frame as
/// rwa_propagator. Uses a fixed-step fourth-order commutator-free Magnus
/// integrator on the piecewise-smooth Hamiltonian (rectangular edges are
/// instantaneous), so every step is exactly unitary.
///
/// stepsPerDrivePeriod must be >= 40; the default is far past convergence
/// for the demonstrated pulses. Agreement with rwa_propagator is limited by
/// the counter-rotating terms, at scale (amp / 2 omegaD)^2.
Propagator labframe_propagator(const DeviceParams& params, const RectPulse& pulse,
                               int stepsPerDrivePeriod = 256);

}  // namespace fluxcz

#endif  // FLUXCZ_MODEL_HPP
