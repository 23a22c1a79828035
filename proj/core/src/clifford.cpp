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

#include "fluxcz/clifford.hpp"

#include <cmath>

namespace fluxcz {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

Eigen::Matrix2cd x90() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, -kI * s, -kI * s, s;
  return m;
}

Eigen::Matrix2cd zrot(double beta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * beta);
  return m;
}

/// Divides out the phase of the first entry with the largest magnitude so
/// that equal-up-to-phase matrices become equal.
Eigen::Matrix2cd phase_normalize(const Eigen::Matrix2cd& u) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(u(i, j)) > best + 1e-12) {
        best = std::abs(u(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  return u * (std::abs(u(bi, bj)) / u(bi, bj));
}

struct GroupTables {
  std::vector<CliffordElement> elements;
  std::array<std::array<int, 24>, 24> compose;
};

GroupTables build_tables() {
  GroupTables tables;
  const double step = 0.5 * kPi;
  const Eigen::Matrix2cd x = x90();

  // Enumerate Z(a) X90 Z(b) X90 Z(c) over all quarter-turn Z angles and keep
  // one representative per phase-equivalence class; exactly 24 survive.
  std::vector<Eigen::Matrix2cd> canon;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const Eigen::Matrix2cd u =
            zrot(a * step) * x * zrot(b * step) * x * zrot(c * step);
        bool seen = false;
        for (const auto& v : canon) {
          if (equal_up_to_phase(u, v)) {
            seen = true;
            break;
          }
        }
        if (!seen) {
          CliffordElement e;
          e.index = static_cast<int>(tables.elements.size());
          e.zPost = a * step;
          e.zMid = b * step;
          e.zPre = c * step;
          e.matrix = phase_normalize(u);
          tables.elements.push_back(e);
          canon.push_back(u);
        }
      }
    }
  }

  for (int i = 0; i < 24; ++i) {
    for (int j = 0; j < 24; ++j) {
      const Eigen::Matrix2cd prod =
          tables.elements[i].matrix * tables.elements[j].matrix;
      int hit = -1;
      for (int k = 0; k < 24; ++k) {
        if (equal_up_to_phase(prod, tables.elements[k].matrix)) {
          hit = k;
          break;
        }
      }
      tables.compose[i][j] = hit;
    }
  }
  return tables;
}

const GroupTables& tables() {
  static const GroupTables t = build_tables();
  return t;
}

}  // namespace

bool equal_up_to_phase(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v,
                       double tol) {
  const complex<double> overlap = (u.adjoint() * v).trace();
  if (std::abs(overlap) < tol) return false;
  const complex<double> phase = overlap / std::abs(overlap);
  return (u * phase - v).cwiseAbs().maxCoeff() < tol;
}

const std::vector<CliffordElement>& clifford_group() { return tables().elements; }

int clifford_compose(int a, int b) { return tables().compose[a][b]; }

int clifford_lookup(const Eigen::Matrix2cd& u, double tol) {
  const auto& g = clifford_group();
  for (const auto& e : g) {
    if (equal_up_to_phase(u, e.matrix, tol)) return e.index;
  }
  return -1;
}

}  // namespace fluxcz
