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

#include "fluxcz/ptm.hpp"

#include <cmath>

namespace fluxcz {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

Eigen::Matrix2cd pauli1(int k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

struct PauliTable {
  std::array<std::string, 16> labels;
  std::array<Eigen::Matrix4cd, 16> ops;
};

const PauliTable& table() {
  static const PauliTable t = [] {
    PauliTable tt;
    const char* names = "IXYZ";
    for (int k = 0; k < 16; ++k) {
      tt.labels[k] = std::string() + names[k / 4] + names[k % 4];
      tt.ops[k] = kron2(pauli1(k / 4), pauli1(k % 4));
    }
    return tt;
  }();
  return t;
}

}  // namespace

const std::array<std::string, 16>& pauli_labels() { return table().labels; }
const Eigen::Matrix4cd& pauli_op(int k) { return table().ops[k]; }

Channel channel_from_unitary(const Eigen::Matrix4cd& u) {
  return [u](const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
    return u * rho * u.adjoint();
  };
}

Channel compose_channels(const Channel& after, const Channel& before) {
  return [after, before](const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
    return after(before(rho));
  };
}

Eigen::Matrix4cd cphase_unitary(double theta) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = std::exp(kI * theta);
  return u;
}

Channel cphase_channel(double theta) { return channel_from_unitary(cphase_unitary(theta)); }

Channel depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0) throw ConfigError("depolarizing_channel: p outside [0, 1]");
  return [p](const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
    return (1.0 - p) * rho +
           p * rho.trace() * 0.25 * Eigen::Matrix4cd::Identity();
  };
}

Channel coupler_leak_channel(const std::array<double, 4>& residualPop) {
  for (double r : residualPop) {
    if (r < 0.0 || r > 1.0) {
      throw ConfigError("coupler_leak_channel: residual population outside [0, 1]");
    }
  }
  return [residualPop](const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
    Eigen::Matrix4cd out = rho;
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        if (j != k) {
          out(j, k) *= std::sqrt((1.0 - residualPop[j]) * (1.0 - residualPop[k]));
        }
      }
    }
    return out;
  };
}

Eigen::Matrix<double, 16, 16> ptm_of(const Channel& channel) {
  Eigen::Matrix<double, 16, 16> r;
  for (int j = 0; j < 16; ++j) {
    const Eigen::Matrix4cd mapped = channel(pauli_op(j));
    for (int i = 0; i < 16; ++i) {
      r(i, j) = 0.25 * (pauli_op(i) * mapped).trace().real();
    }
  }
  return r;
}

double ptm_fidelity(const Eigen::Matrix<double, 16, 16>& target,
                    const Eigen::Matrix<double, 16, 16>& actual) {
  const double tr = (target.transpose() * actual).trace();
  return (tr / 4.0 + 1.0) / 5.0;
}

PauliProcessMatrix process_tomography(const Channel& channel) {
  return process_tomography(channel, cz_ptm());
}

PauliProcessMatrix process_tomography(const Channel& channel,
                                      const Eigen::Matrix<double, 16, 16>& target) {
  PauliProcessMatrix out;
  out.entries = ptm_of(channel);
  out.fidelity = ptm_fidelity(target, out.entries);
  out.tracePreserving = true;
  for (int j = 0; j < 16; ++j) {
    const double expected = (j == 0) ? 1.0 : 0.0;
    if (std::abs(out.entries(0, j) - expected) > 1e-10) out.tracePreserving = false;
  }
  return out;
}

const Eigen::Matrix<double, 16, 16>& cz_ptm() {
  static const Eigen::Matrix<double, 16, 16> r = ptm_of(cphase_channel(kPi));
  return r;
}

Eigen::MatrixXcd choi_matrix(const Channel& channel) {
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(16, 16);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
      e(j, k) = 1.0;
      choi.block<4, 4>(4 * j, 4 * k) = channel(e);
    }
  }
  return choi;
}

double choi_min_eigenvalue(const Channel& channel) {
  const Eigen::MatrixXcd choi = choi_matrix(channel);
  // Hermitize against rounding before the eigensolve.
  const Eigen::MatrixXcd h = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_preservation_defect(const Channel& channel) {
  const Eigen::MatrixXcd choi = choi_matrix(channel);
  double defect = 0.0;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      // Partial trace over the output slot must give <j|k|> = delta_jk.
      const complex<double> tr = choi.block<4, 4>(4 * j, 4 * k).trace();
      defect = std::max(defect, std::abs(tr - (j == k ? 1.0 : 0.0)));
    }
  }
  return defect;
}

}  // namespace fluxcz
