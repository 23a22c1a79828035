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

#ifndef FLUXCZ_VIRTUAL_LAB_HPP
#define FLUXCZ_VIRTUAL_LAB_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fluxcz/gate_design.hpp"
#include "fluxcz/types.hpp"

namespace fluxcz {

/// Synthetic coupler Rabi map over (pulse duration x drive frequency) for
/// one computational state. population(i, j) pairs times[i] with freqs[j].
///
/// The coupler readout is abstracted to a visibility factor `contrast`
/// applied to the excited population, plus binomial sampling at `shots` and
/// an optional Gaussian readout jitter noiseSigma. shots == 0 means the
/// infinite-averaging limit (exact probabilities).
struct ChevronDataset {
  ComputationalLabel label;
  std::vector<double> times;   // ns
  std::vector<double> freqs;   // rad/ns
  Eigen::MatrixXd population;  // |times| x |freqs|, clamped to [0, 1]
  double noiseSigma = 0.0;
  std::uint64_t shots = 0;
  double contrast = 1.0;
  std::uint64_t seed = 0;
};

/// Default readout visibility, set so that synthetic chevrons have the same
/// muted contrast as the conditional-pi-pulse coupler readout they stand for.
inline constexpr double kDefaultReadoutContrast = 0.65;

ChevronDataset synthesize_chevron(const TransitionSet& transitions,
                                  ComputationalLabel label, double amp,
                                  const std::vector<double>& timeGrid,
                                  const std::vector<double>& freqGrid,
                                  double noiseSigma, std::uint64_t shots,
                                  std::uint64_t seed,
                                  double contrast = kDefaultReadoutContrast);

enum class RidgeMethod { kFit, kFft };

/// Transition frequency and drive amplitude recovered from one chevron by
/// the two-stage procedure: per-column Rabi frequencies (damped-cosine fit,
/// or DFT peak with kFft) followed by a hyperbola fit of
/// omegaR(f) = sqrt(amp^2 + (f - omegaMN)^2). Errors come from the
/// least-squares covariance.
struct ChevronFit {
  double omegaMN = 0.0;
  double amp = 0.0;
  double sigmaOmega = 0.0;
  double sigmaAmp = 0.0;
  double residualNorm = 0.0;
  std::vector<int> usedColumns;
  std::vector<int> flaggedColumns;  // no detectable oscillation
};

ChevronFit fit_chevron(const ChevronDataset& data,
                       RidgeMethod method = RidgeMethod::kFit);

/// CPhase-angle measurement: Ramsey on qubit 2 with qubit 1 prepared in |0>
/// or |1>, populations fitted against the phase of the virtual-Z sweep.
/// theta is the phase difference between the two branches, and the embedded
/// amplitude sweep (7 points, +-10%) locates targetAmp where theta crosses pi.
struct PhaseCalibration {
  double phi2 = 0.0;            // fit offset of the qubit-1-in-|0> branch
  double theta = 0.0;           // conditional phase at the given amplitude
  std::vector<double> amplitudes;
  std::vector<double> thetaPerAmp;
  double targetAmp = 0.0;
  double slope = 0.0;           // linear fit d(theta)/d(amp)
  double intercept = 0.0;
  double residualNorm = 0.0;
};

/// Phase grid spanning [0, 2pi] inclusive.
std::vector<double> make_phase_grid(int n = 29);

PhaseCalibration calibrate_phase(const TransitionSet& transitions,
                                 const RectPulse& pulse,
                                 const std::vector<double>& phiGrid,
                                 std::uint64_t shots, std::uint64_t seed);

/// One round of the closed-loop tune-up: amplitude from the CPhase
/// calibration, then carrier and duration from equalizing the measured Rabi
/// periods of the 00, 10 and 01 subspaces (the 11 ridge is not used).
struct RefineRound {
  double theta = 0.0;
  double ampBefore = 0.0;
  double ampAfter = 0.0;
  double omegaD = 0.0;
  double tau = 0.0;
};

struct RefineResult {
  PulseDesign design;
  std::vector<RefineRound> rounds;
  bool converged = true;
};

RefineResult refine_gate(const TransitionSet& transitions, const PulseDesign& initial,
                         int rounds, std::uint64_t shots, std::uint64_t seed);

}  // namespace fluxcz

#endif  // FLUXCZ_VIRTUAL_LAB_HPP
