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

#include <doctest.h>

#include <cmath>
#include <random>

#include "fluxcz/fitting.hpp"
#include "fluxcz/rng.hpp"
#include "fluxcz/types.hpp"

using namespace fluxcz;

TEST_CASE("fit_line recovers slope and intercept") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(0.7 - 0.05 * i);
  }
  const LinearFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.05).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.residualNorm < 1e-12);
}

TEST_CASE("dominant_frequency finds a planted tone") {
  std::vector<double> t, y;
  const double w = 0.83;
  for (int i = 0; i < 120; ++i) {
    t.push_back(0.5 * i);
    y.push_back(0.4 - 0.3 * std::cos(w * t.back()));
  }
  CHECK(dominant_frequency(t, y) == doctest::Approx(w).epsilon(2e-3));
}

TEST_CASE("fit_damped_cosine recovers planted parameters") {
  std::vector<double> t, y;
  const double amp = 0.31, offset = 0.33, decay = 0.004, w = 0.21, phase = 0.0;
  for (int i = 0; i < 150; ++i) {
    t.push_back(1.5 * i);
    y.push_back(offset - amp * std::exp(-decay * t.back()) * std::cos(w * t.back() + phase));
  }
  const FitResult f = fit_damped_cosine(t, y);
  REQUIRE(f.converged);
  CHECK(f.params[0] == doctest::Approx(amp).epsilon(1e-6));
  CHECK(f.params[1] == doctest::Approx(offset).epsilon(1e-6));
  CHECK(f.params[2] == doctest::Approx(decay).epsilon(1e-4));
  CHECK(f.params[3] == doctest::Approx(w).epsilon(1e-8));
}

TEST_CASE("fit_damped_cosine is robust to noise") {
  std::mt19937_64 rng(41);
  std::vector<double> t, y;
  const double w = 0.17;
  for (int i = 0; i < 120; ++i) {
    t.push_back(2.0 * i);
    y.push_back(0.4 - 0.35 * std::cos(w * t.back()) + 0.02 * draw_normal(rng));
  }
  const FitResult f = fit_damped_cosine(t, y);
  REQUIRE(f.converged);
  CHECK(f.params[3] == doctest::Approx(w).epsilon(2e-3));
  CHECK(f.stderrs[3] > 0.0);
}

TEST_CASE("fit_hyperbola recovers vertex and amplitude") {
  std::vector<double> x, y;
  const double amp = 0.11, x0 = 21.5;
  for (int i = 0; i < 25; ++i) {
    const double xi = x0 - 0.25 + 0.02 * i;
    x.push_back(xi);
    y.push_back(std::hypot(amp, xi - x0));
  }
  const FitResult f = fit_hyperbola(x, y);
  REQUIRE(f.converged);
  CHECK(f.params[0] == doctest::Approx(amp).epsilon(1e-8));
  CHECK(f.params[1] == doctest::Approx(x0).epsilon(1e-9));
}

TEST_CASE("fit_exponential_decay recovers a p^m") {
  std::vector<double> m, y;
  for (int depth : {1, 2, 4, 8, 16, 32, 64}) {
    m.push_back(depth);
    y.push_back(0.98 * std::pow(0.991, depth));
  }
  const FitResult f = fit_exponential_decay(m, y);
  REQUIRE(f.converged);
  CHECK(f.params[0] == doctest::Approx(0.98).epsilon(1e-8));
  CHECK(f.params[1] == doctest::Approx(0.991).epsilon(1e-8));
}

TEST_CASE("fit_exponential_decay refuses garbage") {
  std::vector<double> m{1, 2, 3, 4, 5};
  std::vector<double> y{0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(fit_exponential_decay(m, y), FitError);
}

TEST_CASE("levenberg_marquardt reports parameter errors that scale with noise") {
  // Straight-line model fitted at two noise levels; the reported stderr
  // should grow roughly linearly with the noise.
  auto run = [&](double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> x(60), y(60);
    for (int i = 0; i < 60; ++i) {
      x[i] = 0.1 * i;
      y[i] = 1.0 + 0.5 * x[i] + noise * draw_normal(rng);
    }
    auto resid = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
      for (int i = 0; i < 60; ++i) r[i] = p[0] + p[1] * x[i] - y[i];
    };
    Eigen::VectorXd p0(2);
    p0 << 0.0, 0.0;
    return levenberg_marquardt(resid, p0, 60);
  };
  const FitResult lo = run(0.01, 5);
  const FitResult hi = run(0.1, 5);
  REQUIRE(lo.converged);
  REQUIRE(hi.converged);
  CHECK(hi.stderrs[1] > 5.0 * lo.stderrs[1]);
  CHECK(hi.stderrs[1] < 20.0 * lo.stderrs[1]);
}
