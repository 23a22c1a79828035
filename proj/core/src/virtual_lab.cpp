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

#include "fluxcz/virtual_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "fluxcz/fitting.hpp"
#include "fluxcz/rng.hpp"

namespace fluxcz {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

double excited_population(double delta, double amp, double t) {
  const double omegaR2 = delta * delta + amp * amp;
  if (omegaR2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(omegaR2) * t);
  return (amp * amp / omegaR2) * s * s;
}

double sample_population(double pTrue, double noiseSigma, std::uint64_t shots,
                         std::mt19937_64& rng) {
  double p = pTrue;
  if (shots > 0) {
    p = static_cast<double>(draw_binomial(rng, shots, pTrue)) /
        static_cast<double>(shots);
  }
  if (noiseSigma > 0.0) p += noiseSigma * draw_normal(rng);
  return std::clamp(p, 0.0, 1.0);
}

/// P(qubit2 = 1) for the Ramsey circuit: q1 prepared in |0> or |1>, q2 in
/// Rx(pi/2)|0>, gate propagator, virtual Z(phi) on q2, Rx(pi/2), measure.
/// The coupler starts in |0> and is traced out.
double ramsey_population(const Propagator& gate, bool q1Excited, double phi) {
  const int m = q1Excited ? 1 : 0;
  // q2 state after prep: (|0> - i |1>)/sqrt(2)
  const complex<double> a0 = 1.0 / std::sqrt(2.0);
  const complex<double> a1 = -kI / std::sqrt(2.0);

  // Amplitudes over (n, l) given q1 = m; gate is block diagonal, so only
  // the (m, n) blocks act.
  std::array<complex<double>, 4> amp{};  // index 2n + l
  for (int n = 0; n < 2; ++n) {
    const Eigen::Matrix2cd blk = gate.block(ComputationalLabel{m, n});
    const complex<double> in = (n == 0) ? a0 : a1;
    amp[2 * n + 0] += blk(0, 0) * in;
    amp[2 * n + 1] += blk(1, 0) * in;
  }
  // Z(phi) on q2, then Rx(pi/2): |1> amplitude = (-i a0 + a1)/sqrt(2).
  const complex<double> z = std::exp(kI * phi);
  double p1 = 0.0;
  for (int l = 0; l < 2; ++l) {
    const complex<double> b0 = amp[0 + l];
    const complex<double> b1 = amp[2 + l] * z;
    p1 += std::norm((-kI * b0 + b1) / std::sqrt(2.0));
  }
  return p1;
}

struct CosineFit {
  double amp = 0.0;
  double offset = 0.0;
  double phase = 0.0;  // p(phi) = offset - amp cos(phi + phase)
};

/// Linear least squares for p(phi) = B + u cos(phi) + v sin(phi).
CosineFit fit_unit_frequency_cosine(const std::vector<double>& phi,
                                    const std::vector<double>& p) {
  const int n = static_cast<int>(phi.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = std::cos(phi[i]);
    a(i, 2) = std::sin(phi[i]);
    y[i] = p[i];
  }
  const Eigen::Vector3d x = (a.transpose() * a).ldlt().solve(a.transpose() * y);
  CosineFit f;
  f.offset = x[0];
  f.amp = std::hypot(x[1], x[2]);
  // B + u cos + v sin = B - A cos(phi + c) with u = -A cos c, v = A sin c.
  f.phase = std::atan2(x[2], -x[1]);
  return f;
}

double measure_theta(const Propagator& gate, const std::vector<double>& phiGrid,
                     std::uint64_t shots, std::mt19937_64& rng, double* phi2Out) {
  std::vector<double> pI, pX;
  pI.reserve(phiGrid.size());
  pX.reserve(phiGrid.size());
  for (const double phi : phiGrid) {
    pI.push_back(sample_population(ramsey_population(gate, false, phi), 0.0, shots, rng));
  }
  for (const double phi : phiGrid) {
    pX.push_back(sample_population(ramsey_population(gate, true, phi), 0.0, shots, rng));
  }
  const CosineFit fI = fit_unit_frequency_cosine(phiGrid, pI);
  const CosineFit fX = fit_unit_frequency_cosine(phiGrid, pX);
  if (fI.amp < 0.02 || fX.amp < 0.02) {
    throw FitError("calibrate_phase: flat Ramsey fringes, cannot extract theta");
  }
  if (phi2Out) *phi2Out = wrap_phase(fI.phase);
  return wrap_phase(fX.phase - fI.phase);
}

/// Maps theta to the continuous branch around pi, i.e. into (0, 2pi].
double branch_near_pi(double theta) {
  return theta <= 0.0 ? theta + kTwoPi : theta;
}

}  // namespace

ChevronDataset synthesize_chevron(const TransitionSet& transitions,
                                  ComputationalLabel label, double amp,
                                  const std::vector<double>& timeGrid,
                                  const std::vector<double>& freqGrid,
                                  double noiseSigma, std::uint64_t shots,
                                  std::uint64_t seed, double contrast) {
  transitions.validate();
  if (timeGrid.empty() || freqGrid.empty()) {
    throw ConfigError("synthesize_chevron: empty grid");
  }
  if (!(contrast > 0.0) || contrast > 1.0) {
    throw ConfigError("synthesize_chevron: contrast must be in (0, 1]");
  }

  ChevronDataset data;
  data.label = label;
  data.times = timeGrid;
  data.freqs = freqGrid;
  data.noiseSigma = noiseSigma;
  data.shots = shots;
  data.contrast = contrast;
  data.seed = seed;
  data.population.resize(timeGrid.size(), freqGrid.size());

  const double wmn = transitions[label.index()];
  auto rng = make_rng(task_seed(seed, 0xC4EF00ull + label.index()));
  for (std::size_t i = 0; i < timeGrid.size(); ++i) {
    for (std::size_t j = 0; j < freqGrid.size(); ++j) {
      const double delta = freqGrid[j] - wmn;
      const double pTrue = contrast * excited_population(delta, amp, timeGrid[i]);
      data.population(i, j) = sample_population(pTrue, noiseSigma, shots, rng);
    }
  }
  return data;
}

ChevronFit fit_chevron(const ChevronDataset& data, RidgeMethod method) {
  const int nCols = static_cast<int>(data.freqs.size());
  const int nRows = static_cast<int>(data.times.size());
  if (nCols < 5) throw FitError("fit_chevron: need at least 5 frequency columns");
  if (nRows < 6) throw FitError("fit_chevron: need at least 6 time samples");

  std::vector<double> freqUsed, omegaR, sigma;
  ChevronFit out;

  for (int j = 0; j < nCols; ++j) {
    std::vector<double> y(nRows);
    for (int i = 0; i < nRows; ++i) y[i] = data.population(i, j);

    bool usable = false;
    double w = 0.0, sw = 0.0;
    if (method == RidgeMethod::kFit) {
      try {
        const FitResult fit = fit_damped_cosine(data.times, y);
        const double residRms = fit.residualNorm / std::sqrt(double(nRows));
        usable = fit.converged && fit.params[0] >= 0.01 &&
                 fit.params[0] > 3.0 * residRms && fit.params[3] > 0.0;
        w = fit.params[3];
        sw = std::max(fit.stderrs[3], 1e-12);
      } catch (const FitError&) {
        usable = false;
      }
    } else {
      double lo = y[0], hi = y[0];
      for (double v : y) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      try {
        w = dominant_frequency(data.times, y);
        // Half a scan bin as the nominal uncertainty.
        sw = kPi / (data.times.back() - data.times.front());
        usable = (hi - lo) >= 0.02;
      } catch (const FitError&) {
        usable = false;
      }
    }

    if (usable) {
      freqUsed.push_back(data.freqs[j]);
      omegaR.push_back(w);
      sigma.push_back(sw);
      out.usedColumns.push_back(j);
    } else {
      out.flaggedColumns.push_back(j);
    }
  }

  if (out.usedColumns.size() < 5) {
    throw FitError("fit_chevron: fewer than 5 usable columns (" +
                   std::to_string(out.usedColumns.size()) + " visible)");
  }

  const FitResult hyper = fit_hyperbola(freqUsed, omegaR, sigma);
  if (!hyper.converged) throw FitError("fit_chevron: hyperbola fit did not converge");
  out.amp = hyper.params[0];
  out.omegaMN = hyper.params[1];
  out.sigmaAmp = hyper.stderrs[0];
  out.sigmaOmega = hyper.stderrs[1];
  out.residualNorm = hyper.residualNorm;
  return out;
}

std::vector<double> make_phase_grid(int n) {
  if (n < 4) throw ConfigError("make_phase_grid: need at least 4 points");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = kTwoPi * i / (n - 1);
  return grid;
}

PhaseCalibration calibrate_phase(const TransitionSet& transitions,
                                 const RectPulse& pulse,
                                 const std::vector<double>& phiGrid,
                                 std::uint64_t shots, std::uint64_t seed) {
  transitions.validate();
  pulse.validate();
  if (phiGrid.size() < 4 ||
      *std::max_element(phiGrid.begin(), phiGrid.end()) -
              *std::min_element(phiGrid.begin(), phiGrid.end()) <
          kTwoPi - 1e-9) {
    throw ConfigError("calibrate_phase: phase grid must span at least 2 pi");
  }

  PhaseCalibration cal;
  auto rng = make_rng(task_seed(seed, 0xCA11B7A7E5ull));

  const Propagator atDesign = rwa_propagator(transitions, pulse);
  cal.theta = measure_theta(atDesign, phiGrid, shots, rng, &cal.phi2);

  // Fig-4(c)-style sweep: 7 amplitudes across +-10%, linear fit, crossing.
  const int nSweep = 7;
  std::vector<double> thetaBranch;
  for (int k = 0; k < nSweep; ++k) {
    const double rel = -0.10 + 0.20 * k / (nSweep - 1);
    RectPulse p = pulse;
    p.amp = pulse.amp * (1.0 + rel);
    const Propagator u = rwa_propagator(transitions, p);
    const double th = measure_theta(u, phiGrid, shots, rng, nullptr);
    cal.amplitudes.push_back(p.amp);
    cal.thetaPerAmp.push_back(th);
    thetaBranch.push_back(branch_near_pi(th));
  }

  const LinearFit line = fit_line(cal.amplitudes, thetaBranch);
  if (std::abs(line.slope) < 1e-12) {
    throw FitError("calibrate_phase: phase does not respond to amplitude");
  }
  cal.slope = line.slope;
  cal.intercept = line.intercept;
  cal.residualNorm = line.residualNorm;
  cal.targetAmp = (kPi - line.intercept) / line.slope;
  return cal;
}

RefineResult refine_gate(const TransitionSet& transitions, const PulseDesign& initial,
                         int rounds, std::uint64_t shots, std::uint64_t seed) {
  transitions.validate();
  if (rounds < 1) throw ConfigError("refine_gate: rounds must be >= 1");

  const std::vector<double> phiGrid = make_phase_grid();
  RectPulse cur = initial.pulse;

  RefineResult res;
  double bestFidelity = -1.0;
  RectPulse bestPulse = cur;

  auto noteCandidate = [&](const RectPulse& p) {
    const double f = gate_report(transitions, p).fidelity;
    if (f > bestFidelity) {
      bestFidelity = f;
      bestPulse = p;
    }
  };
  noteCandidate(cur);

  auto ampUpdate = [&](int round) {
    RefineRound rec;
    rec.ampBefore = cur.amp;
    const PhaseCalibration cal = calibrate_phase(transitions, cur, phiGrid, shots,
                                                 task_seed(seed, 100 + round));
    rec.theta = cal.theta;
    // Guard against a wild linear extrapolation on noisy data.
    const double lo = 0.75 * cur.amp, hi = 1.25 * cur.amp;
    cur.amp = std::clamp(cal.targetAmp, lo, hi);
    rec.ampAfter = cur.amp;
    rec.omegaD = cur.omegaD;
    rec.tau = cur.tau;
    return rec;
  };

  // Rabi period of one subspace at a candidate carrier, from a sampled trace.
  auto measurePeriod = [&](int stateIdx, double omegaD, std::mt19937_64& rng) {
    const double wmn = transitions[stateIdx];
    const double delta = omegaD - wmn;
    const double omegaREst = std::hypot(delta, cur.amp);
    const int nPts = 96;
    const double tMax = 2.25 * kTwoPi / omegaREst;
    std::vector<double> t(nPts), y(nPts);
    for (int i = 0; i < nPts; ++i) {
      t[i] = tMax * i / (nPts - 1);
      const double pTrue =
          kDefaultReadoutContrast * excited_population(delta, cur.amp, t[i]);
      y[i] = sample_population(pTrue, 0.0, shots, rng);
    }
    const FitResult fit = fit_damped_cosine(t, y);
    if (!fit.converged || !(fit.params[3] > 0.0)) {
      throw FitError("refine_gate: Rabi trace fit failed");
    }
    return kTwoPi / fit.params[3];
  };

  // Carrier update: minimize the spread of the 00 / 10 / 01 periods over a
  // local scan, then set the duration to their mean. The 11 ridge is
  // deliberately not used.
  auto freqUpdate = [&](int round) {
    auto rng = make_rng(task_seed(seed, 200 + round));
    const int nScan = 17;
    const double half = mhz_to_radns(1.5);
    double bestVar = std::numeric_limits<double>::infinity();
    double bestW = cur.omegaD, bestMean = cur.tau;
    const int states[3] = {0, 2, 1};  // 00, 10, 01
    for (int s = 0; s < nScan; ++s) {
      const double w = cur.omegaD - half + 2.0 * half * s / (nScan - 1);
      double periods[3];
      try {
        for (int q = 0; q < 3; ++q) periods[q] = measurePeriod(states[q], w, rng);
      } catch (const FitError&) {
        continue;
      }
      const double mean = (periods[0] + periods[1] + periods[2]) / 3.0;
      double var = 0.0;
      for (double p : periods) var += (p - mean) * (p - mean);
      if (var < bestVar) {
        bestVar = var;
        bestW = w;
        bestMean = mean;
      }
    }
    if (!std::isfinite(bestVar)) {
      throw FitError("refine_gate: no usable Rabi traces in carrier scan");
    }
    cur.omegaD = bestW;
    cur.tau = bestMean;
  };

  for (int r = 0; r < rounds; ++r) {
    res.rounds.push_back(ampUpdate(r));
    noteCandidate(cur);
    freqUpdate(r);
    noteCandidate(cur);
  }
  // Land on a phase-consistent amplitude for the final carrier/duration.
  res.rounds.push_back(ampUpdate(rounds));
  noteCandidate(cur);

  const double lastBefore = res.rounds.back().ampBefore;
  const double lastAfter = res.rounds.back().ampAfter;
  res.converged = std::abs(lastAfter - lastBefore) <= 0.01 * lastBefore;

  res.design.method = DesignMethod::kOptimized;
  res.design.converged = res.converged;
  if (res.converged) {
    res.design.pulse = cur;
  } else {
    res.design.pulse = bestPulse;
  }
  res.design.predicted = gate_report(transitions, res.design.pulse);
  return res;
}

}  // namespace fluxcz
