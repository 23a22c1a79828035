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

#ifndef FLUXCZ_SWEEP_HPP
#define FLUXCZ_SWEEP_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fluxcz/gate_design.hpp"
#include "fluxcz/types.hpp"

namespace fluxcz {

/// Grid over transition-frequency mismatches. axis1 holds |w10 - w01|
/// values, axis2 holds |w11 - w00| values (rad/ns). Cells are generated from
/// a base anchored at a reference set: w00 and the sum w10 + w01 are pinned,
/// the axis-1 difference is split symmetrically between w10 and w01, and
/// w11 = w00 + axis2. The anchoring keeps a measured set (which may violate
/// the sum rule) exactly representable as one cell.
struct SweepGrid {
  std::vector<double> axis1;
  std::vector<double> axis2;
  double baseW00 = 0.0;     // anchored w00
  double baseMidSum = 0.0;  // anchored w10 + w01
  double starD1 = 0.0;      // reference |w10 - w01|, annotated as the star
  double starD2 = 0.0;      // reference |w11 - w00|

  void validate() const;
  TransitionSet cell_transitions(double d1, double d2) const;

  /// Grid anchored at a reference TransitionSet, default spans matching the
  /// demonstrated landscape: axis1 0-10 MHz, axis2 0-80 MHz, 41x41.
  static SweepGrid around(const TransitionSet& reference, int n1 = 41, int n2 = 41,
                          double axis1MaxMHz = 10.0, double axis2MaxMHz = 80.0);
};

struct SweepCell {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double fidelity = 0.0;
  double logInfidelity = 0.0;  // log10(1 - F), clamped at -16
  double amp = 0.0;
  double tau = 0.0;
  bool converged = false;
};

struct SweepAnnotation {
  std::string name;
  SweepCell cell;
};

struct SweepResult {
  SweepGrid grid;
  Eigen::MatrixXd fidelity;        // axis1 x axis2
  Eigen::MatrixXd logInfidelity;
  Eigen::MatrixXd optAmp;
  Eigen::MatrixXd optTau;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> converged;
  std::vector<SweepAnnotation> annotations;
  std::size_t evaluatedCells = 0;

  SweepCell cell(int i, int j) const;
};

/// Evaluates one mismatch point: optimize_pulse under the fixed-carrier
/// protocol omegaD = (w11 + 3 w00)/4. Degenerate points (axis2 == 0) come
/// back flagged with converged = false.
SweepCell evaluate_sweep_cell(const SweepGrid& grid, double d1, double d2);

/// Parallel map of evaluate_sweep_cell over the grid; the output is
/// bit-identical for any worker count. Named reference points are evaluated
/// in addition to the grid: the "ideal" point (axis1 = 0 at the centered
/// splitting baseMidSum - 2 baseW00) and the anchor set itself as
/// "experimental star".
SweepResult run_sweep(const SweepGrid& grid, unsigned workers);

}  // namespace fluxcz

#endif  // FLUXCZ_SWEEP_HPP
