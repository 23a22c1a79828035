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

#include "fluxcz/sweep.hpp"

#include <atomic>
#include <cmath>

#include "fluxcz/parallel.hpp"

namespace fluxcz {

namespace {

double log10_infidelity(double fidelity) {
  return std::log10(std::max(1.0 - fidelity, 1e-16));
}

}  // namespace

void SweepGrid::validate() const {
  if (axis1.size() < 2 || axis2.size() < 2) {
    throw ConfigError("SweepGrid: each axis needs at least two values");
  }
  for (std::size_t i = 1; i < axis1.size(); ++i) {
    if (!(axis1[i] > axis1[i - 1])) throw ConfigError("SweepGrid: axis1 not increasing");
  }
  for (std::size_t j = 1; j < axis2.size(); ++j) {
    if (!(axis2[j] > axis2[j - 1])) throw ConfigError("SweepGrid: axis2 not increasing");
  }
  if (!(baseW00 > 0.0) || !(baseMidSum > 0.0)) {
    throw ConfigError("SweepGrid: base anchor not set");
  }
}

TransitionSet SweepGrid::cell_transitions(double d1, double d2) const {
  TransitionSet t;
  t.w00 = baseW00;
  t.w11 = baseW00 + d2;
  t.w10 = 0.5 * baseMidSum + 0.5 * d1;
  t.w01 = 0.5 * baseMidSum - 0.5 * d1;
  return t;
}

SweepGrid SweepGrid::around(const TransitionSet& reference, int n1, int n2,
                            double axis1MaxMHz, double axis2MaxMHz) {
  reference.validate();
  SweepGrid g;
  g.baseW00 = reference.w00;
  g.baseMidSum = reference.w10 + reference.w01;
  g.starD1 = std::abs(reference.w10 - reference.w01);
  g.starD2 = std::abs(reference.w11 - reference.w00);
  g.axis1.resize(n1);
  g.axis2.resize(n2);
  for (int i = 0; i < n1; ++i) {
    g.axis1[i] = mhz_to_radns(axis1MaxMHz * i / (n1 - 1));
  }
  for (int j = 0; j < n2; ++j) {
    g.axis2[j] = mhz_to_radns(axis2MaxMHz * j / (n2 - 1));
  }
  return g;
}

SweepCell evaluate_sweep_cell(const SweepGrid& grid, double d1, double d2) {
  SweepCell cell;
  cell.axis1 = d1;
  cell.axis2 = d2;
  try {
    const TransitionSet t = grid.cell_transitions(d1, d2);
    const PulseDesign design = optimize_pulse(t, recipe_drive_frequency(t));
    cell.fidelity = design.predicted.fidelity;
    cell.logInfidelity = log10_infidelity(cell.fidelity);
    cell.amp = design.pulse.amp;
    cell.tau = design.pulse.tau;
    cell.converged = design.converged;
  } catch (const ConfigError&) {
    // Degenerate cell (e.g. zero splitting): flagged, sweep continues.
    cell.converged = false;
  }
  return cell;
}

SweepCell SweepResult::cell(int i, int j) const {
  SweepCell c;
  c.axis1 = grid.axis1[i];
  c.axis2 = grid.axis2[j];
  c.fidelity = fidelity(i, j);
  c.logInfidelity = logInfidelity(i, j);
  c.amp = optAmp(i, j);
  c.tau = optTau(i, j);
  c.converged = converged(i, j);
  return c;
}

SweepResult run_sweep(const SweepGrid& grid, unsigned workers) {
  grid.validate();
  if (workers < 1) throw ConfigError("run_sweep: workers must be >= 1");

  const int n1 = static_cast<int>(grid.axis1.size());
  const int n2 = static_cast<int>(grid.axis2.size());

  SweepResult res;
  res.grid = grid;
  res.fidelity.resize(n1, n2);
  res.logInfidelity.resize(n1, n2);
  res.optAmp.resize(n1, n2);
  res.optTau.resize(n1, n2);
  res.converged.resize(n1, n2);

  std::atomic<std::size_t> evaluated{0};
  parallel_for_index(static_cast<std::size_t>(n1) * n2, workers, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n2;
    const int j = static_cast<int>(idx) % n2;
    const SweepCell cell = evaluate_sweep_cell(grid, grid.axis1[i], grid.axis2[j]);
    res.fidelity(i, j) = cell.fidelity;
    res.logInfidelity(i, j) = cell.logInfidelity;
    res.optAmp(i, j) = cell.amp;
    res.optTau(i, j) = cell.tau;
    res.converged(i, j) = cell.converged;
    evaluated.fetch_add(1);
  });
  res.evaluatedCells = evaluated.load();

  // Reference points, evaluated exactly rather than snapped to the lattice.
  // At axis2 = baseMidSum - 2 w00 the generated set is exactly symmetric, so
  // the closed form applies and the fidelity is exactly 1.
  const double idealD2 = grid.baseMidSum - 2.0 * grid.baseW00;
  res.annotations.push_back({"ideal", evaluate_sweep_cell(grid, 0.0, idealD2)});
  if (grid.starD2 > 0.0) {
    res.annotations.push_back(
        {"experimental star", evaluate_sweep_cell(grid, grid.starD1, grid.starD2)});
  }
  return res;
}

}  // namespace fluxcz
