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

#ifndef FLUXCZ_PTM_HPP
#define FLUXCZ_PTM_HPP

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fluxcz/types.hpp"

namespace fluxcz {

/// Two-qubit quantum channel as an action on 4x4 density matrices.
using Channel = std::function<Eigen::Matrix4cd(const Eigen::Matrix4cd&)>;

/// Two-qubit Pauli basis in the fixed order II, IX, IY, IZ, XI, ..., ZZ
/// (qubit-1 label major). pauli_op(k) = P_{k/4} (x) P_{k%4}.
const std::array<std::string, 16>& pauli_labels();
const Eigen::Matrix4cd& pauli_op(int k);

Channel channel_from_unitary(const Eigen::Matrix4cd& u);
Channel compose_channels(const Channel& after, const Channel& before);

/// diag(1, 1, 1, e^{i theta}); theta = pi is CZ.
Eigen::Matrix4cd cphase_unitary(double theta);
Channel cphase_channel(double theta);

/// rho -> (1-p) rho + p Tr(rho) I/4.
Channel depolarizing_channel(double p);

/// Dephasing-by-leak channel: the residual coupler excitation r_mn left in
/// branch mn carries which-path information, damping coherences as
/// rho_jk -> sqrt((1-r_j)(1-r_k)) rho_jk off the diagonal.
Channel coupler_leak_channel(const std::array<double, 4>& residualPop);

/// Pauli transfer matrix R_ij = Tr(P_i Lambda(P_j)) / 4, with a fidelity
/// against a target PTM from F = (Tr(Rt^T R)/4 + 1)/5. tracePreserving
/// reports whether the first row is (1, 0, ..., 0).
struct PauliProcessMatrix {
  Eigen::Matrix<double, 16, 16> entries;
  double fidelity = 0.0;
  bool tracePreserving = true;
};

Eigen::Matrix<double, 16, 16> ptm_of(const Channel& channel);
double ptm_fidelity(const Eigen::Matrix<double, 16, 16>& target,
                    const Eigen::Matrix<double, 16, 16>& actual);

PauliProcessMatrix process_tomography(const Channel& channel);
PauliProcessMatrix process_tomography(const Channel& channel,
                                      const Eigen::Matrix<double, 16, 16>& target);

/// Analytic PTM of the ideal CZ (all entries in {-1, 0, 1}).
const Eigen::Matrix<double, 16, 16>& cz_ptm();

/// Choi matrix sum_jk |j><k| (x) Lambda(|j><k|); used for CPTP checks.
Eigen::MatrixXcd choi_matrix(const Channel& channel);
double choi_min_eigenvalue(const Channel& channel);
double trace_preservation_defect(const Channel& channel);

}  // namespace fluxcz

#endif  // FLUXCZ_PTM_HPP
