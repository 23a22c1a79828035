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

#include "fluxcz/xeb.hpp"

#include <algorithm>
#include <cmath>

#include "fluxcz/clifford.hpp"
#include "fluxcz/fitting.hpp"
#include "fluxcz/parallel.hpp"
#include "fluxcz/rng.hpp"

namespace fluxcz {

namespace {

using std::complex;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;
constexpr complex<double> kI{0.0, 1.0};

/// Applies C1 (x) C2 to a statevector in the |q1 q2> basis.
void apply_layer(Vec4& v, const Eigen::Matrix2cd& c1, const Eigen::Matrix2cd& c2) {
  // qubit 2: pairs (0,1) and (2,3)
  for (int base : {0, 2}) {
    const complex<double> a = v[base], b = v[base + 1];
    v[base] = c2(0, 0) * a + c2(0, 1) * b;
    v[base + 1] = c2(1, 0) * a + c2(1, 1) * b;
  }
  // qubit 1: pairs (0,2) and (1,3)
  for (int base : {0, 1}) {
    const complex<double> a = v[base], b = v[base + 2];
    v[base] = c1(0, 0) * a + c1(0, 1) * b;
    v[base + 2] = c1(1, 0) * a + c1(1, 1) * b;
  }
}

void apply_cphase(Vec4& v, double theta) { v[3] *= std::exp(kI * theta); }

std::array<double, 4> probabilities(const Vec4& v) {
  return {std::norm(v[0]), std::norm(v[1]), std::norm(v[2]), std::norm(v[3])};
}

Mat4 kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

void depolarize(Mat4& rho, double p) {
  if (p == 0.0) return;
  const complex<double> tr = rho.trace();
  rho *= (1.0 - p);
  rho += (p * 0.25) * tr * Mat4::Identity();
}

void leak_dephase(Mat4& rho, const std::array<double, 4>& r) {
  std::array<double, 4> c;
  for (int k = 0; k < 4; ++k) c[k] = std::sqrt(1.0 - r[k]);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (j != k) rho(j, k) *= c[j] * c[k];
    }
  }
}

std::array<double, 4> sample_counts_frequencies(const std::array<double, 4>& probs,
                                                std::uint64_t shots,
                                                std::mt19937_64& rng) {
  if (shots == 0) return probs;  // infinite-averaging limit
  double total = probs[0] + probs[1] + probs[2] + probs[3];
  if (total <= 0.0) total = 1.0;
  std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    int x = 3;
    for (int k = 0; k < 4; ++k) {
      acc += probs[k];
      if (u < acc) {
        x = k;
        break;
      }
    }
    ++counts[x];
  }
  std::array<double, 4> freq;
  for (int k = 0; k < 4; ++k) {
    freq[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
  }
  return freq;
}

struct EstimatorTerms {
  double num = 0.0;
  double den = 0.0;
};

EstimatorTerms xeb_terms(const std::array<double, 4>& ideal,
                         const std::array<double, 4>& freq) {
  double mean = 0.0, sumSq = 0.0;
  for (int k = 0; k < 4; ++k) {
    mean += ideal[k] * freq[k];
    sumSq += ideal[k] * ideal[k];
  }
  return {4.0 * mean - 1.0, 4.0 * sumSq - 1.0};
}

struct TaskOutput {
  EstimatorTerms ref;
  EstimatorTerms interleaved;
  XebCircuitRecord record;
};

/// Per-depth estimate and jackknife-over-sets standard error from the
/// ratio-of-sums estimator. Sets with no estimator weight (denominator 0,
/// which happens when both qubits end on the equator) simply contribute
/// nothing, which is why the ratio of sums is used.
void aggregate(const std::vector<EstimatorTerms>& terms, double* value, double* se) {
  double num = 0.0, den = 0.0;
  for (const auto& t : terms) {
    num += t.num;
    den += t.den;
  }
  *value = (den != 0.0) ? num / den : 0.0;
  const int n = static_cast<int>(terms.size());
  double var = 0.0;
  if (n > 1 && den != 0.0) {
    for (const auto& t : terms) {
      const double dl = den - t.den;
      const double leave = (dl != 0.0) ? (num - t.num) / dl : *value;
      var += (leave - *value) * (leave - *value);
    }
    var *= static_cast<double>(n - 1) / n;
  }
  *se = std::sqrt(var);
}

}  // namespace

void NoiseModel::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(depol1) || !prob(depol2)) {
    throw ConfigError("NoiseModel: depolarizing probabilities must be in [0, 1]");
  }
  for (double r : couplerLeak) {
    if (!prob(r)) throw ConfigError("NoiseModel: couplerLeak entries must be in [0, 1]");
  }
  if (!std::isfinite(phaseError)) throw ConfigError("NoiseModel: phaseError must be finite");
}

Channel NoiseModel::target_gate_channel() const {
  validate();
  const Channel unit = cphase_channel(kPi + phaseError);
  const Channel dep = depolarizing_channel(depol2);
  const Channel leak = coupler_leak_channel(couplerLeak);
  return compose_channels(leak, compose_channels(dep, unit));
}

Channel NoiseModel::clifford_layer_noise() const {
  validate();
  return depolarizing_channel(depol1);
}

NoiseModel NoiseModel::from_gate_report(const GateReport& report, double d1,
                                        double d2) {
  NoiseModel n;
  n.depol1 = d1;
  n.depol2 = d2;
  n.phaseError = wrap_phase(report.condPhase - kPi);
  n.couplerLeak = report.residualPop;
  n.validate();
  return n;
}

std::vector<int> XebConfig::default_depths() {
  return {1, 2, 4, 6, 9, 13, 18, 25, 34, 46, 61, 80, 100};
}

XebRun simulate_xeb(const NoiseModel& noise, const XebConfig& config) {
  noise.validate();
  if (config.depths.empty()) throw ConfigError("simulate_xeb: depths must be non-empty");
  if (config.setsPerDepth < 2) throw ConfigError("simulate_xeb: need at least 2 sets per depth");

  const auto& group = clifford_group();
  const int nDepths = static_cast<int>(config.depths.size());
  const std::size_t nTasks = static_cast<std::size_t>(nDepths) * config.setsPerDepth;

  const double thetaNoisy = kPi + noise.phaseError;

  std::vector<TaskOutput> outputs(nTasks);
  parallel_for_index(nTasks, config.workers, [&](std::size_t idx) {
    const int di = static_cast<int>(idx) / config.setsPerDepth;
    const int depth = config.depths[di];
    const std::uint64_t seed = task_seed(config.seed, idx);

    auto rngCirc = make_rng(seed);
    TaskOutput& out = outputs[idx];
    out.record.depth = depth;
    out.record.cliffs1.resize(depth);
    out.record.cliffs2.resize(depth);
    for (int m = 0; m < depth; ++m) {
      out.record.cliffs1[m] = static_cast<std::uint8_t>(uniform_below(rngCirc, 24));
      out.record.cliffs2[m] = static_cast<std::uint8_t>(uniform_below(rngCirc, 24));
    }

    // Ideal statevectors (reference, and interleaved with the ideal CZ).
    Vec4 vRef = Vec4::Zero(), vInt = Vec4::Zero();
    vRef[0] = 1.0;
    vInt[0] = 1.0;
    // Noisy density matrices.
    Mat4 rhoRef = Mat4::Zero(), rhoInt = Mat4::Zero();
    rhoRef(0, 0) = 1.0;
    rhoInt(0, 0) = 1.0;

    for (int m = 0; m < depth; ++m) {
      const Eigen::Matrix2cd& c1 = group[out.record.cliffs1[m]].matrix;
      const Eigen::Matrix2cd& c2 = group[out.record.cliffs2[m]].matrix;
      apply_layer(vRef, c1, c2);
      apply_layer(vInt, c1, c2);
      apply_cphase(vInt, kPi);

      const Mat4 u = kron2(c1, c2);
      rhoRef = (u * rhoRef * u.adjoint()).eval();
      depolarize(rhoRef, noise.depol1);

      rhoInt = (u * rhoInt * u.adjoint()).eval();
      depolarize(rhoInt, noise.depol1);
      const Mat4 cz = cphase_unitary(thetaNoisy);
      rhoInt = (cz * rhoInt * cz.adjoint()).eval();
      depolarize(rhoInt, noise.depol2);
      leak_dephase(rhoInt, noise.couplerLeak);
    }

    const std::array<double, 4> idealRef = probabilities(vRef);
    const std::array<double, 4> idealInt = probabilities(vInt);
    std::array<double, 4> noisyRef, noisyInt;
    for (int k = 0; k < 4; ++k) {
      noisyRef[k] = std::max(0.0, rhoRef(k, k).real());
      noisyInt[k] = std::max(0.0, rhoInt(k, k).real());
    }

    auto rngRef = make_rng(task_seed(seed, 1));
    auto rngInt = make_rng(task_seed(seed, 2));
    const auto freqRef = sample_counts_frequencies(noisyRef, config.shots, rngRef);
    const auto freqInt = sample_counts_frequencies(noisyInt, config.shots, rngInt);

    out.ref = xeb_terms(idealRef, freqRef);
    out.interleaved = xeb_terms(idealInt, freqInt);
    out.record.freq = freqInt;
  });

  XebRun run;
  run.depths = config.depths;
  run.setsPerDepth = config.setsPerDepth;
  run.shots = config.shots;
  run.seed = config.seed;
  run.noise = noise;
  run.refFidelities.resize(nDepths);
  run.intFidelities.resize(nDepths);
  run.refStderr.resize(nDepths);
  run.intStderr.resize(nDepths);
  run.interleavedRecords.reserve(nTasks);

  for (int di = 0; di < nDepths; ++di) {
    std::vector<EstimatorTerms> ref, inter;
    for (int s = 0; s < config.setsPerDepth; ++s) {
      const TaskOutput& out = outputs[di * config.setsPerDepth + s];
      ref.push_back(out.ref);
      inter.push_back(out.interleaved);
    }
    aggregate(ref, &run.refFidelities[di], &run.refStderr[di]);
    aggregate(inter, &run.intFidelities[di], &run.intStderr[di]);
  }
  for (const auto& out : outputs) run.interleavedRecords.push_back(out.record);

  std::vector<double> depthsD(run.depths.begin(), run.depths.end());
  const FitResult refFit = fit_exponential_decay(depthsD, run.refFidelities);
  const FitResult intFit = fit_exponential_decay(depthsD, run.intFidelities);
  run.aRef = refFit.params[0];
  run.pRef = refFit.params[1];
  run.pRefErr = refFit.stderrs[1];
  run.aInt = intFit.params[0];
  run.pInt = intFit.params[1];
  run.pIntErr = intFit.stderrs[1];
  if (!(run.pRef > 0.0) || run.pRef > 1.02 || !(run.pInt > 0.0) || run.pInt > 1.02) {
    throw FitError("simulate_xeb: fitted decay outside the physical range");
  }
  run.gateFidelity = xeb_fidelity(run.pRef, std::min(run.pInt, run.pRef), 2);
  return run;
}

double xeb_fidelity(double pRef, double pInt, int nQubits) {
  if (!(pRef > 0.0) || pRef > 1.0 || !(pInt > 0.0)) {
    throw ConfigError("xeb_fidelity: decay parameters must be in (0, 1]");
  }
  if (pInt > pRef) {
    throw ConfigError("xeb_fidelity: pInt > pRef is unphysical");
  }
  const double d = std::pow(2.0, nQubits);
  const double p = pInt / pRef;
  return p + (1.0 - p) / d;
}

CliffordLayerFidelity clifford_layer_fidelity(double pRef) {
  CliffordLayerFidelity f;
  f.d4 = pRef + (1.0 - pRef) / 4.0;
  f.d2 = pRef + (1.0 - pRef) / 2.0;
  return f;
}

double cphase_vs_cz_fidelity(double theta) {
  return (14.0 + 6.0 * std::cos(theta - kPi)) / 20.0;
}

double depol_error_from_fidelity(double avgFidelity, int dim) {
  return (1.0 - avgFidelity) * dim / (dim - 1.0);
}

ErrorBudget error_budget_from(double theta, double pRef, double pInt,
                              double singleQubitDur, double czDur) {
  if (!(pRef > 0.0) || !(pInt > 0.0)) {
    throw ConfigError("error_budget: decay parameters must be positive");
  }
  ErrorBudget b;
  b.theta = theta;
  b.eps1 = 1.0 - pRef;
  b.epsTotal = 1.0 - std::min(pInt / pRef, 1.0);
  b.epsTheta = depol_error_from_fidelity(cphase_vs_cz_fidelity(theta));
  b.epsD = b.eps1 * czDur / singleQubitDur;
  b.epsO = b.epsTotal - b.epsTheta - b.epsD;
  b.consistent = b.epsO >= -1e-12;
  return b;
}

ErrorBudget error_budget(const XebRun& run, double singleQubitDur, double czDur,
                         unsigned workers) {
  if (run.interleavedRecords.empty()) {
    throw ConfigError("error_budget: run carries no interleaved circuit records");
  }

  // Re-score the sampled interleaved data against CPhase(theta) hypotheses
  // and keep the phase that maximizes the fitted decay.
  const auto& group = clifford_group();
  const int nTheta = 201;
  std::vector<double> thetaGrid(nTheta);
  for (int i = 0; i < nTheta; ++i) {
    thetaGrid[i] = kPi * (0.9 + 0.2 * i / (nTheta - 1));
  }

  std::vector<int> depths = run.depths;
  std::vector<double> depthsD(depths.begin(), depths.end());
  std::vector<double> scores(nTheta);

  parallel_for_index(nTheta, workers, [&](std::size_t ti) {
    const double theta = thetaGrid[ti];
    // Aggregate per depth.
    std::vector<double> num(depths.size(), 0.0), den(depths.size(), 0.0);
    for (const auto& rec : run.interleavedRecords) {
      Vec4 v = Vec4::Zero();
      v[0] = 1.0;
      for (int m = 0; m < rec.depth; ++m) {
        apply_layer(v, group[rec.cliffs1[m]].matrix, group[rec.cliffs2[m]].matrix);
        apply_cphase(v, theta);
      }
      const auto ideal = probabilities(v);
      const EstimatorTerms t = xeb_terms(ideal, rec.freq);
      const auto it = std::find(depths.begin(), depths.end(), rec.depth);
      const std::size_t di = static_cast<std::size_t>(it - depths.begin());
      num[di] += t.num;
      den[di] += t.den;
    }
    std::vector<double> fdep(depths.size());
    for (std::size_t di = 0; di < depths.size(); ++di) {
      fdep[di] = (den[di] != 0.0) ? num[di] / den[di] : 0.0;
    }
    double p = 0.0;
    try {
      const FitResult fit = fit_exponential_decay(depthsD, fdep);
      p = fit.params[1];
    } catch (const FitError&) {
      p = -1.0;
    }
    scores[ti] = p;
  });

  int best = 0;
  for (int i = 1; i < nTheta; ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return error_budget_from(thetaGrid[best], run.pRef, run.pInt, singleQubitDur, czDur);
}

}  // namespace fluxcz
