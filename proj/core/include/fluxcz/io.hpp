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

#ifndef FLUXCZ_IO_HPP
#define FLUXCZ_IO_HPP

#include <cstdint>
#include <string>

#include "fluxcz/sweep.hpp"
#include "fluxcz/types.hpp"
#include "fluxcz/virtual_lab.hpp"
#include "fluxcz/xeb.hpp"

namespace fluxcz {

/// Provenance block embedded in every output file so that reruns with the
/// same inputs are byte-identical and attributable.
struct RunMeta {
  std::uint64_t seed = 0;
  std::string configHash;
};

/// FNV-1a hash of a canonical config string, printed as hex.
std::string config_hash_hex(const std::string& canonical);

// -- input files -------------------------------------------------------------
//
// Device parameters, flat JSON object in GHz/MHz:
//   {"omega1_ghz":..., "omega2_ghz":..., "omegaC_ghz":...,
//    "zeta1c_mhz":..., "zeta2c_mhz":..., "zeta12_mhz":...}
// Measured transitions, same layout as the calibration table:
//   {"w00_ghz":..., "w01_ghz":..., "w10_ghz":..., "w11_ghz":...,
//    "sigma_w00_mhz":..., ...}   (sigmas optional)

bool is_transitions_file(const std::string& path);
DeviceParams load_device_params(const std::string& path);
TransitionSet load_transitions(const std::string& path);

/// Accepts either file kind; a device file is converted through the
/// dispersive model.
TransitionSet load_transitions_any(const std::string& path);

void save_device_params(const DeviceParams& params, const std::string& path);
void save_transitions(const TransitionSet& transitions, const std::string& path);

// -- result files ------------------------------------------------------------

std::string design_to_json(const PulseDesign& design, const TransitionSet& transitions,
                           const RunMeta& meta);
void save_design(const PulseDesign& design, const TransitionSet& transitions,
                 const RunMeta& meta, const std::string& path);
PulseDesign load_design(const std::string& path, TransitionSet* transitionsOut = nullptr);

/// One row per grid cell (axis-1 major), then one row per annotation:
///   axis1_mhz,axis2_mhz,fidelity,log10_infidelity,amp_mhz,tau_ns,converged
std::string sweep_to_csv(const SweepResult& result);
std::string sweep_summary_to_json(const SweepResult& result, const RunMeta& meta);
void save_sweep(const SweepResult& result, const RunMeta& meta,
                const std::string& csvPath, const std::string& jsonPath);

/// Long-format CSV (t_ns,f_ghz,population) plus a JSON sidecar at
/// csvPath + ".json" carrying label, shots, seed, noise and contrast.
void save_chevron(const ChevronDataset& data, const std::string& csvPath);
ChevronDataset load_chevron(const std::string& csvPath);

std::string phase_calibration_to_json(const PhaseCalibration& cal, const RunMeta& meta);

std::string refine_to_json(const RefineResult& result, const TransitionSet& transitions,
                           const RunMeta& meta);

std::string xeb_run_to_json(const XebRun& run, const RunMeta& meta);
std::string xeb_decay_to_csv(const XebRun& run);
std::string error_budget_to_json(const ErrorBudget& budget, const RunMeta& meta);

std::string ptm_to_csv(const PauliProcessMatrix& ptm);
std::string ptm_header_to_json(const PauliProcessMatrix& ptm, const RunMeta& meta);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fluxcz

#endif  // FLUXCZ_IO_HPP
