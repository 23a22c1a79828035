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

#include "fluxcz/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fluxcz/version.hpp"

namespace fluxcz {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

double require_number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + ": missing key: " + key);
  if (!j.at(key).is_number()) throw ConfigError(path + ": key is not a number: " + key);
  return j.at(key).get<double>();
}

json meta_json(const RunMeta& meta) {
  return json{{"tool", kToolName},
              {"version", kVersion},
              {"seed", meta.seed},
              {"config_hash", meta.configHash}};
}

json pulse_json(const RectPulse& pulse) {
  return json{{"omega_d_ghz", radns_to_ghz(pulse.omegaD)},
              {"amp_mhz", radns_to_mhz(pulse.amp)},
              {"tau_ns", pulse.tau},
              {"carrier_phase_rad", pulse.carrierPhase}};
}

RectPulse pulse_from_json(const json& j, const std::string& path) {
  RectPulse p;
  p.omegaD = ghz_to_radns(require_number(j, "omega_d_ghz", path));
  p.amp = mhz_to_radns(require_number(j, "amp_mhz", path));
  p.tau = require_number(j, "tau_ns", path);
  p.carrierPhase = j.value("carrier_phase_rad", 0.0);
  return p;
}

json report_json(const GateReport& rep) {
  return json{{"phi_rad",
               {{"p00", rep.phases[0]}, {"p01", rep.phases[1]},
                {"p10", rep.phases[2]}, {"p11", rep.phases[3]}}},
              {"conditional_phase_rad", rep.condPhase},
              {"residual_population", rep.residualPop},
              {"fidelity", rep.fidelity},
              {"local_z_rad", rep.localZ}};
}

json transitions_json(const TransitionSet& t) {
  json j{{"w00_ghz", radns_to_ghz(t.w00)},
         {"w01_ghz", radns_to_ghz(t.w01)},
         {"w10_ghz", radns_to_ghz(t.w10)},
         {"w11_ghz", radns_to_ghz(t.w11)}};
  static const char* names[4] = {"w00", "w01", "w10", "w11"};
  for (int k = 0; k < 4; ++k) {
    if (t.sigma[k] > 0.0) {
      j[std::string("sigma_") + names[k] + "_mhz"] = radns_to_mhz(t.sigma[k]);
    }
  }
  return j;
}

TransitionSet transitions_from_json(const json& j, const std::string& path) {
  TransitionSet t;
  t.w00 = ghz_to_radns(require_number(j, "w00_ghz", path));
  t.w01 = ghz_to_radns(require_number(j, "w01_ghz", path));
  t.w10 = ghz_to_radns(require_number(j, "w10_ghz", path));
  t.w11 = ghz_to_radns(require_number(j, "w11_ghz", path));
  static const char* names[4] = {"w00", "w01", "w10", "w11"};
  for (int k = 0; k < 4; ++k) {
    const std::string key = std::string("sigma_") + names[k] + "_mhz";
    if (j.contains(key)) t.sigma[k] = mhz_to_radns(j.at(key).get<double>());
  }
  t.validate();
  return t;
}

}  // namespace

std::string config_hash_hex(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

bool is_transitions_file(const std::string& path) {
  const json j = parse_file(path);
  return j.contains("w00_ghz");
}

DeviceParams load_device_params(const std::string& path) {
  const json j = parse_file(path);
  DeviceParams p;
  p.omega1 = ghz_to_radns(require_number(j, "omega1_ghz", path));
  p.omega2 = ghz_to_radns(require_number(j, "omega2_ghz", path));
  p.omegaC = ghz_to_radns(require_number(j, "omegaC_ghz", path));
  p.zeta1c = mhz_to_radns(require_number(j, "zeta1c_mhz", path));
  p.zeta2c = mhz_to_radns(require_number(j, "zeta2c_mhz", path));
  p.zeta12 = mhz_to_radns(j.value("zeta12_mhz", 0.0));
  p.validate();
  return p;
}

TransitionSet load_transitions(const std::string& path) {
  return transitions_from_json(parse_file(path), path);
}

TransitionSet load_transitions_any(const std::string& path) {
  if (is_transitions_file(path)) return load_transitions(path);
  return transitions_from(load_device_params(path));
}

void save_device_params(const DeviceParams& params, const std::string& path) {
  const json j{{"omega1_ghz", radns_to_ghz(params.omega1)},
               {"omega2_ghz", radns_to_ghz(params.omega2)},
               {"omegaC_ghz", radns_to_ghz(params.omegaC)},
               {"zeta1c_mhz", radns_to_mhz(params.zeta1c)},
               {"zeta2c_mhz", radns_to_mhz(params.zeta2c)},
               {"zeta12_mhz", radns_to_mhz(params.zeta12)}};
  write_text_file(path, j.dump(2) + "\n");
}

void save_transitions(const TransitionSet& transitions, const std::string& path) {
  write_text_file(path, transitions_json(transitions).dump(2) + "\n");
}

std::string design_to_json(const PulseDesign& design, const TransitionSet& transitions,
                           const RunMeta& meta) {
  json j = meta_json(meta);
  j["method"] = design_method_name(design.method);
  j["converged"] = design.converged;
  j["pulse"] = pulse_json(design.pulse);
  j["predicted"] = report_json(design.predicted);
  j["transitions"] = transitions_json(transitions);
  return j.dump(2) + "\n";
}

void save_design(const PulseDesign& design, const TransitionSet& transitions,
                 const RunMeta& meta, const std::string& path) {
  write_text_file(path, design_to_json(design, transitions, meta));
}

PulseDesign load_design(const std::string& path, TransitionSet* transitionsOut) {
  const json j = parse_file(path);
  if (!j.contains("pulse")) throw ConfigError(path + ": missing key: pulse");
  PulseDesign d;
  d.pulse = pulse_from_json(j.at("pulse"), path);
  d.method = (j.value("method", "optimized") == std::string("closed-form"))
                 ? DesignMethod::kClosedForm
                 : DesignMethod::kOptimized;
  d.converged = j.value("converged", true);
  if (transitionsOut) {
    if (!j.contains("transitions")) throw ConfigError(path + ": missing key: transitions");
    *transitionsOut = transitions_from_json(j.at("transitions"), path);
  }
  if (j.contains("predicted")) {
    const json& p = j.at("predicted");
    d.predicted.condPhase = p.value("conditional_phase_rad", 0.0);
    d.predicted.fidelity = p.value("fidelity", 0.0);
    if (p.contains("residual_population")) {
      const auto v = p.at("residual_population").get<std::vector<double>>();
      for (std::size_t k = 0; k < std::min<std::size_t>(4, v.size()); ++k) {
        d.predicted.residualPop[k] = v[k];
      }
    }
    if (p.contains("phi_rad")) {
      const json& ph = p.at("phi_rad");
      d.predicted.phases = {ph.value("p00", 0.0), ph.value("p01", 0.0),
                            ph.value("p10", 0.0), ph.value("p11", 0.0)};
    }
    if (p.contains("local_z_rad")) {
      const auto v = p.at("local_z_rad").get<std::vector<double>>();
      if (v.size() >= 2) d.predicted.localZ = {v[0], v[1]};
    }
  }
  return d;
}

namespace {

void append_cell_row(std::string& out, const SweepCell& cell) {
  out += fmt(radns_to_mhz(cell.axis1));
  out += ',';
  out += fmt(radns_to_mhz(cell.axis2));
  out += ',';
  out += fmt(cell.fidelity);
  out += ',';
  out += fmt(cell.logInfidelity);
  out += ',';
  out += fmt(radns_to_mhz(cell.amp));
  out += ',';
  out += fmt(cell.tau);
  out += ',';
  out += cell.converged ? "true" : "false";
  out += '\n';
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
  std::string out = "axis1_mhz,axis2_mhz,fidelity,log10_infidelity,amp_mhz,tau_ns,converged\n";
  const int n1 = static_cast<int>(result.grid.axis1.size());
  const int n2 = static_cast<int>(result.grid.axis2.size());
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      append_cell_row(out, result.cell(i, j));
    }
  }
  for (const auto& a : result.annotations) append_cell_row(out, a.cell);
  return out;
}

std::string sweep_summary_to_json(const SweepResult& result, const RunMeta& meta) {
  json j = meta_json(meta);
  json axis1 = json::array(), axis2 = json::array();
  for (double v : result.grid.axis1) axis1.push_back(radns_to_mhz(v));
  for (double v : result.grid.axis2) axis2.push_back(radns_to_mhz(v));
  j["grid"] = {{"axis1_mhz", axis1},
               {"axis2_mhz", axis2},
               {"base_w00_ghz", radns_to_ghz(result.grid.baseW00)},
               {"base_mid_sum_ghz", radns_to_ghz(result.grid.baseMidSum)}};
  j["evaluated_cells"] = result.evaluatedCells;
  json ann = json::array();
  for (const auto& a : result.annotations) {
    ann.push_back({{"name", a.name},
                   {"axis1_mhz", radns_to_mhz(a.cell.axis1)},
                   {"axis2_mhz", radns_to_mhz(a.cell.axis2)},
                   {"fidelity", a.cell.fidelity},
                   {"log10_infidelity", a.cell.logInfidelity},
                   {"amp_mhz", radns_to_mhz(a.cell.amp)},
                   {"tau_ns", a.cell.tau},
                   {"converged", a.cell.converged}});
  }
  j["annotations"] = ann;
  return j.dump(2) + "\n";
}

void save_sweep(const SweepResult& result, const RunMeta& meta,
                const std::string& csvPath, const std::string& jsonPath) {
  write_text_file(csvPath, sweep_to_csv(result));
  write_text_file(jsonPath, sweep_summary_to_json(result, meta));
}

void save_chevron(const ChevronDataset& data, const std::string& csvPath) {
  std::string out = "t_ns,f_ghz,population\n";
  for (std::size_t i = 0; i < data.times.size(); ++i) {
    for (std::size_t j = 0; j < data.freqs.size(); ++j) {
      out += fmt(data.times[i]);
      out += ',';
      out += fmt(radns_to_ghz(data.freqs[j]));
      out += ',';
      out += fmt(data.population(i, j));
      out += '\n';
    }
  }
  write_text_file(csvPath, out);

  const json sidecar{{"tool", kToolName},
                     {"version", kVersion},
                     {"label", data.label.str()},
                     {"shots", data.shots},
                     {"seed", data.seed},
                     {"noise_sigma", data.noiseSigma},
                     {"contrast", data.contrast}};
  write_text_file(csvPath + ".json", sidecar.dump(2) + "\n");
}

ChevronDataset load_chevron(const std::string& csvPath) {
  const std::string text = read_text_file(csvPath);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(csvPath + ": empty file");

  struct Row {
    double t, f, p;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r.t, &r.f, &r.p) != 3) {
      throw ConfigError(csvPath + ": bad row: " + line);
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw ConfigError(csvPath + ": no data rows");

  std::vector<double> times, freqs;
  for (const auto& r : rows) {
    if (times.empty() || r.t != times.back()) {
      if (std::find(times.begin(), times.end(), r.t) == times.end()) times.push_back(r.t);
    }
    const double w = ghz_to_radns(r.f);
    if (std::find(freqs.begin(), freqs.end(), w) == freqs.end()) freqs.push_back(w);
  }
  std::sort(times.begin(), times.end());
  std::sort(freqs.begin(), freqs.end());

  ChevronDataset data;
  data.times = times;
  data.freqs = freqs;
  data.population = Eigen::MatrixXd::Zero(times.size(), freqs.size());
  for (const auto& r : rows) {
    const auto ti = std::lower_bound(times.begin(), times.end(), r.t) - times.begin();
    const auto fi =
        std::lower_bound(freqs.begin(), freqs.end(), ghz_to_radns(r.f)) - freqs.begin();
    data.population(ti, fi) = r.p;
  }

  std::ifstream side(csvPath + ".json");
  if (side) {
    json j;
    side >> j;
    const std::string label = j.value("label", "00");
    data.label = ComputationalLabel{label.size() > 0 && label[0] == '1' ? 1 : 0,
                                    label.size() > 1 && label[1] == '1' ? 1 : 0};
    data.shots = j.value("shots", std::uint64_t{0});
    data.seed = j.value("seed", std::uint64_t{0});
    data.noiseSigma = j.value("noise_sigma", 0.0);
    data.contrast = j.value("contrast", 1.0);
  }
  return data;
}

std::string phase_calibration_to_json(const PhaseCalibration& cal, const RunMeta& meta) {
  json j = meta_json(meta);
  j["phi2_rad"] = cal.phi2;
  j["theta_rad"] = cal.theta;
  json amps = json::array(), thetas = json::array();
  for (double a : cal.amplitudes) amps.push_back(radns_to_mhz(a));
  for (double t : cal.thetaPerAmp) thetas.push_back(t);
  j["amplitudes_mhz"] = amps;
  j["theta_per_amp_rad"] = thetas;
  j["target_amp_mhz"] = radns_to_mhz(cal.targetAmp);
  j["linear_fit"] = {{"slope_rad_per_radns", cal.slope},
                     {"intercept_rad", cal.intercept},
                     {"residual_norm", cal.residualNorm}};
  return j.dump(2) + "\n";
}

std::string refine_to_json(const RefineResult& result, const TransitionSet& transitions,
                           const RunMeta& meta) {
  json j = meta_json(meta);
  j["converged"] = result.converged;
  json rounds = json::array();
  for (const auto& r : result.rounds) {
    rounds.push_back({{"theta_rad", r.theta},
                      {"amp_before_mhz", radns_to_mhz(r.ampBefore)},
                      {"amp_after_mhz", radns_to_mhz(r.ampAfter)},
                      {"omega_d_ghz", radns_to_ghz(r.omegaD)},
                      {"tau_ns", r.tau}});
  }
  j["rounds"] = rounds;
  json traj = json::array();
  for (const auto& r : result.rounds) traj.push_back(radns_to_mhz(r.ampAfter));
  j["amp_trajectory_mhz"] = traj;
  j["final_design"] = {{"method", design_method_name(result.design.method)},
                       {"converged", result.design.converged},
                       {"pulse", pulse_json(result.design.pulse)},
                       {"predicted", report_json(result.design.predicted)},
                       {"transitions", transitions_json(transitions)}};
  return j.dump(2) + "\n";
}

std::string xeb_run_to_json(const XebRun& run, const RunMeta& meta) {
  json j = meta_json(meta);
  j["depths"] = run.depths;
  j["sets_per_depth"] = run.setsPerDepth;
  j["shots"] = run.shots;
  j["noise"] = {{"depol1", run.noise.depol1},
                {"depol2", run.noise.depol2},
                {"phase_error_rad", run.noise.phaseError},
                {"coupler_leak", run.noise.couplerLeak}};
  j["ref"] = {{"a", run.aRef}, {"p", run.pRef}, {"p_err", run.pRefErr},
              {"fidelities", run.refFidelities}, {"stderr", run.refStderr}};
  j["interleaved"] = {{"a", run.aInt}, {"p", run.pInt}, {"p_err", run.pIntErr},
                      {"fidelities", run.intFidelities}, {"stderr", run.intStderr}};
  const CliffordLayerFidelity single = clifford_layer_fidelity(run.pRef);
  j["gate_fidelity"] = run.gateFidelity;
  j["single_qubit_layer_fidelity_d4"] = single.d4;
  j["single_qubit_layer_fidelity_d2"] = single.d2;
  return j.dump(2) + "\n";
}

std::string xeb_decay_to_csv(const XebRun& run) {
  std::string out = "depth,ref_fidelity,ref_stderr,int_fidelity,int_stderr\n";
  for (std::size_t i = 0; i < run.depths.size(); ++i) {
    out += std::to_string(run.depths[i]);
    out += ',';
    out += fmt(run.refFidelities[i]);
    out += ',';
    out += fmt(run.refStderr[i]);
    out += ',';
    out += fmt(run.intFidelities[i]);
    out += ',';
    out += fmt(run.intStderr[i]);
    out += '\n';
  }
  return out;
}

std::string error_budget_to_json(const ErrorBudget& budget, const RunMeta& meta) {
  json j = meta_json(meta);
  j["theta_rad"] = budget.theta;
  j["theta_over_pi"] = budget.theta / kPi;
  j["eps_1"] = budget.eps1;
  j["eps_theta"] = budget.epsTheta;
  j["eps_d"] = budget.epsD;
  j["eps_o"] = budget.epsO;
  j["eps_total"] = budget.epsTotal;
  j["consistent"] = budget.consistent;
  return j.dump(2) + "\n";
}

std::string ptm_to_csv(const PauliProcessMatrix& ptm) {
  std::string out;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      out += fmt(ptm.entries(i, j));
      out += (j == 15) ? '\n' : ',';
    }
  }
  return out;
}

std::string ptm_header_to_json(const PauliProcessMatrix& ptm, const RunMeta& meta) {
  json j = meta_json(meta);
  json order = json::array();
  for (const auto& l : pauli_labels()) order.push_back(l);
  j["pauli_order"] = order;
  j["fidelity_vs_target"] = ptm.fidelity;
  j["trace_preserving"] = ptm.tracePreserving;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fluxcz
