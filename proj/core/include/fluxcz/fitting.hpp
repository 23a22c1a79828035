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

#ifndef FLUXCZ_FITTING_HPP
#define FLUXCZ_FITTING_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace fluxcz {

/// Result of a nonlinear least-squares fit. Parameter errors are the usual
/// sqrt of the diagonal of s^2 (J^T W J)^-1 with s^2 the reduced chi-square.
struct FitResult {
  Eigen::VectorXd params;
  Eigen::VectorXd stderrs;
  double residualNorm = 0.0;  // sqrt(sum of squared weighted residuals)
  int iterations = 0;
  bool converged = false;
};

/// Weighted residual function: fills r with (model - data) * sqrt(weight).
using ResidualFn = std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r)>;

/// Dense Levenberg-Marquardt with a forward-difference Jacobian. Intended
/// for the small curve fits in this project (<= 6 parameters, <= a few
/// thousand residuals).
FitResult levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd p0,
                              int nResiduals, int maxIter = 200,
                              double tol = 1e-12);

/// Ordinary least squares y = a + b x. Returns {a, b} with standard errors.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double interceptErr = 0.0;
  double slopeErr = 0.0;
  double residualNorm = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// y = offset - amp * exp(-decay t) * cos(freq t + phase). Seeded by a
/// coarse DFT power scan; returns a converged FitResult with params
/// (amp, offset, decay, freq, phase). freq is reported non-negative.
FitResult fit_damped_cosine(const std::vector<double>& t,
                            const std::vector<double>& y);

/// Peak angular frequency of y(t) by a dense DFT power scan with parabolic
/// refinement; the alternative to fit_damped_cosine for ridge extraction.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y);

/// y = sqrt(amp^2 + (x - x0)^2), params (amp, x0); optional per-point sigma
/// weights. Used for the Rabi-frequency-versus-drive hyperbola.
FitResult fit_hyperbola(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& sigma = {});

/// y = a * p^m over integer depths m, params (a, p).
FitResult fit_exponential_decay(const std::vector<double>& m,
                                const std::vector<double>& y);

}  // namespace fluxcz

#endif  // FLUXCZ_FITTING_HPP
