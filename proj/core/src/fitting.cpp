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

#include "fluxcz/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fluxcz/types.hpp"

namespace fluxcz {

namespace {

Eigen::MatrixXd forward_jacobian(const ResidualFn& fn, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& r0) {
  const int n = static_cast<int>(r0.size());
  const int k = static_cast<int>(p.size());
  Eigen::MatrixXd jac(n, k);
  Eigen::VectorXd r(n);
  for (int j = 0; j < k; ++j) {
    const double step = 1e-7 * std::max(1.0, std::abs(p[j]));
    Eigen::VectorXd pj = p;
    pj[j] += step;
    fn(pj, r);
    jac.col(j) = (r - r0) / step;
  }
  return jac;
}

}  // namespace

FitResult levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd p0,
                              int nResiduals, int maxIter, double tol) {
  const int k = static_cast<int>(p0.size());
  Eigen::VectorXd r(nResiduals);
  fn(p0, r);
  double cost = r.squaredNorm();

  double lambda = 1e-3;
  FitResult out;
  out.params = p0;
  Eigen::MatrixXd jac;

  int it = 0;
  bool jacFresh = false;
  for (; it < maxIter; ++it) {
    if (!jacFresh) jac = forward_jacobian(fn, p0, r);
    jacFresh = true;

    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;
    Eigen::MatrixXd damped = jtj;
    damped.diagonal().array() += lambda * (jtj.diagonal().array().abs() + 1e-30);
    Eigen::VectorXd step = damped.ldlt().solve(-jtr);

    Eigen::VectorXd pTry = p0 + step;
    Eigen::VectorXd rTry(nResiduals);
    fn(pTry, rTry);
    const double costTry = rTry.squaredNorm();

    if (costTry < cost) {
      const double rel = (cost - costTry) / std::max(cost, 1e-300);
      p0 = pTry;
      r = rTry;
      cost = costTry;
      lambda = std::max(lambda * 0.3, 1e-14);
      jacFresh = false;
      if (rel < tol || step.norm() < tol * (1.0 + p0.norm())) {
        out.converged = true;
        ++it;
        break;
      }
    } else {
      lambda *= 8.0;
      if (lambda > 1e12) {
        out.converged = cost < 1e-24 || jtr.norm() < 1e-10 * (1.0 + cost);
        break;
      }
    }
  }
  if (it == maxIter) out.converged = false;

  out.params = p0;
  out.iterations = it;
  out.residualNorm = std::sqrt(cost);

  // Parameter covariance from the final Jacobian.
  jac = forward_jacobian(fn, p0, r);
  Eigen::MatrixXd jtj = jac.transpose() * jac;
  const int dof = std::max(1, nResiduals - k);
  const double s2 = cost / dof;
  Eigen::MatrixXd cov = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
  out.stderrs = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw FitError("fit_line: need at least two points");
  }
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw FitError("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residualNorm = std::sqrt(ss);
  const double s2 = ss / std::max(1, n - 2);
  f.slopeErr = std::sqrt(s2 * n / det);
  f.interceptErr = std::sqrt(s2 * sxx / det);
  return f;
}

double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 4) {
    throw FitError("dominant_frequency: need at least four samples");
  }
  const int n = static_cast<int>(t.size());
  double mean = 0;
  for (double v : y) mean += v;
  mean /= n;

  const double span = t.back() - t.front();
  if (!(span > 0)) throw FitError("dominant_frequency: zero time span");
  // Dense power scan between one cycle per span and Nyquist-ish.
  const double wMin = kTwoPi / span;
  double dtMin = span;
  for (int i = 1; i < n; ++i) dtMin = std::min(dtMin, t[i] - t[i - 1]);
  const double wMax = kPi / std::max(dtMin, 1e-12);
  const int nScan = 8 * n;
  const double dw = (wMax - wMin) / nScan;

  auto power = [&](double w) {
    std::complex<double> acc = 0;
    for (int i = 0; i < n; ++i) {
      acc += (y[i] - mean) * std::exp(std::complex<double>(0.0, -w * t[i]));
    }
    return std::norm(acc);
  };

  double bestW = wMin, bestP = -1;
  for (int s = 0; s <= nScan; ++s) {
    const double w = wMin + s * dw;
    const double p = power(w);
    if (p > bestP) {
      bestP = p;
      bestW = w;
    }
  }
  // Parabolic refinement around the peak.
  const double pl = power(bestW - dw), pc = bestP, pr = power(bestW + dw);
  const double denom = pl - 2 * pc + pr;
  if (std::abs(denom) > 1e-300) {
    const double shift = 0.5 * (pl - pr) / denom;
    if (std::abs(shift) <= 1.0) bestW += shift * dw;
  }
  return bestW;
}

FitResult fit_damped_cosine(const std::vector<double>& t,
                            const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 6) {
    throw FitError("fit_damped_cosine: need at least six samples");
  }
  const int n = static_cast<int>(t.size());

  double mean = 0, lo = y[0], hi = y[0];
  for (double v : y) {
    mean += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  mean /= n;

  Eigen::VectorXd p0(5);
  p0 << 0.5 * (hi - lo), mean, 0.0, dominant_frequency(t, y), 0.0;

  auto resid = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      const double model =
          p[1] - p[0] * std::exp(-p[2] * t[i]) * std::cos(p[3] * t[i] + p[4]);
      r[i] = model - y[i];
    }
  };
  FitResult fit = levenberg_marquardt(resid, p0, n);
  // Canonicalize: amp >= 0, freq >= 0.
  if (fit.params[0] < 0) {
    fit.params[0] = -fit.params[0];
    fit.params[4] += kPi;
  }
  if (fit.params[3] < 0) {
    fit.params[3] = -fit.params[3];
    fit.params[4] = -fit.params[4];
  }
  fit.params[4] = wrap_phase(fit.params[4]);
  return fit;
}

FitResult fit_hyperbola(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& sigma) {
  if (x.size() != y.size() || x.size() < 3) {
    throw FitError("fit_hyperbola: need at least three points");
  }
  if (!sigma.empty() && sigma.size() != x.size()) {
    throw FitError("fit_hyperbola: sigma size mismatch");
  }
  const int n = static_cast<int>(x.size());

  int iMin = 0;
  for (int i = 1; i < n; ++i) {
    if (y[i] < y[iMin]) iMin = i;
  }
  Eigen::VectorXd p0(2);
  p0 << std::max(y[iMin], 1e-9), x[iMin];

  std::vector<double> w(n, 1.0);
  if (!sigma.empty()) {
    double sMin = 1e300;
    for (double s : sigma) {
      if (s > 0) sMin = std::min(sMin, s);
    }
    const double floor = (sMin < 1e300) ? 0.1 * sMin : 1.0;
    for (int i = 0; i < n; ++i) w[i] = 1.0 / std::max(sigma[i], floor);
  }

  auto resid = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      const double d = x[i] - p[1];
      r[i] = (std::sqrt(p[0] * p[0] + d * d) - y[i]) * w[i];
    }
  };
  FitResult fit = levenberg_marquardt(resid, p0, n);
  fit.params[0] = std::abs(fit.params[0]);
  return fit;
}

FitResult fit_exponential_decay(const std::vector<double>& m,
                                const std::vector<double>& y) {
  if (m.size() != y.size() || m.size() < 3) {
    throw FitError("fit_exponential_decay: need at least three depths");
  }
  const int n = static_cast<int>(m.size());

  // Log-linear seed over the positive points.
  std::vector<double> lx, ly;
  for (int i = 0; i < n; ++i) {
    if (y[i] > 1e-6) {
      lx.push_back(m[i]);
      ly.push_back(std::log(y[i]));
    }
  }
  double a0 = 1.0, p0v = 0.9;
  if (lx.size() >= 2) {
    const LinearFit lf = fit_line(lx, ly);
    a0 = std::exp(lf.intercept);
    p0v = std::clamp(std::exp(lf.slope), 1e-3, 1.5);
  }

  Eigen::VectorXd p0(2);
  p0 << a0, p0v;
  auto resid = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      r[i] = p[0] * std::pow(p[1], m[i]) - y[i];
    }
  };
  FitResult fit = levenberg_marquardt(resid, p0, n);
  if (!fit.converged || !std::isfinite(fit.params[1])) {
    throw FitError("fit_exponential_decay: no exponential decay in data");
  }
  return fit;
}

}  // namespace fluxcz
