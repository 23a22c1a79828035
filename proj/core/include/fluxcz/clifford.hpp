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

#ifndef FLUXCZ_CLIFFORD_HPP
#define FLUXCZ_CLIFFORD_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fluxcz/types.hpp"

namespace fluxcz {

/// One single-qubit Clifford element, realized as exactly two pi/2 pulses
/// plus virtual Z rotations:
///   U = Z(zPost) X90 Z(zMid) X90 Z(zPre),
/// all Z angles multiples of pi/2 (virtual, i.e. free), with the rightmost
/// factor applied first. In hardware terms the Z sandwiches rotate the
/// equatorial axes of the two physical pi/2 pulses.
struct CliffordElement {
  int index = 0;
  double zPre = 0.0;
  double zMid = 0.0;
  double zPost = 0.0;
  Eigen::Matrix2cd matrix;  // phase-normalized
};

/// The 24 single-qubit Cliffords, deterministically ordered and closed under
/// composition modulo global phase.
const std::vector<CliffordElement>& clifford_group();

/// Index of the element equal to a * b (b applied first) modulo phase.
int clifford_compose(int a, int b);

/// True when u and v differ only by a global phase.
bool equal_up_to_phase(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v,
                       double tol = 1e-9);

/// Index of the group element matching u modulo phase, or -1.
int clifford_lookup(const Eigen::Matrix2cd& u, double tol = 1e-9);

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  return m;
}
inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace fluxcz

#endif  // FLUXCZ_CLIFFORD_HPP
