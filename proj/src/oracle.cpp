// Copyright 2026 The sfvqd Authors
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

#include "sfvqd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sfvqd/errors.hpp"

namespace sfvqd {

namespace {

constexpr std::size_t kMaxDenseQubits = 14;
constexpr double kLabelResidual = 1e-6;

long nearest(double x) { return std::lround(x); }

}  // namespace

Spectrum exact_spectrum(const PauliSum& h) {
  if (h.n_qubits() > kMaxDenseQubits) throw ResourceLimit("dense diagonalization limited to 14 qubits");
  const Eigen::MatrixXcd m = to_dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw InvalidState("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

HalfInt spin_from_s_squared(double s2) {
  const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(0.0, s2)));
  return HalfInt::from_twice(static_cast<int>(nearest(2.0 * s)));
}

std::vector<LabeledEigenstate> sector_labels(const Spectrum& spectrum, std::size_t n_spatial, double cluster_gap) {
  const std::size_t n_qubits = 2 * n_spatial;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  if (spectrum.vectors.rows() != dim) throw InvalidArgument("eigenvectors do not match orbital count");
  const NumberOperators num = build_number_operators(n_spatial);
  const std::vector<Eigen::MatrixXcd> ops = {to_dense(num.alpha), to_dense(num.beta), to_dense(build_s_squared(n_spatial))};

  std::vector<LabeledEigenstate> out;
  const Eigen::Index n = spectrum.energies.size();
  std::size_t cluster_id = 0;
  for (Eigen::Index start = 0; start < n; ++cluster_id) {
    Eigen::Index end = start + 1;
    while (end < n && spectrum.energies(end) - spectrum.energies(end - 1) < cluster_gap) ++end;
    const Eigen::MatrixXcd basis = spectrum.vectors.middleCols(start, end - start);

    // Refine the cluster basis against each label operator in turn; each
    // stage splits the current groups by rounded eigenvalue.
    std::vector<Eigen::MatrixXcd> groups = {basis};
    for (const Eigen::MatrixXcd& op : ops) {
      std::vector<Eigen::MatrixXcd> next;
      for (const Eigen::MatrixXcd& g : groups) {
        const Eigen::MatrixXcd proj = g.adjoint() * op * g;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (proj + proj.adjoint()));
        const Eigen::MatrixXcd rotated = g * es.eigenvectors();
        Eigen::Index a = 0;
        while (a < rotated.cols()) {
          Eigen::Index b = a + 1;
          while (b < rotated.cols() && std::abs(es.eigenvalues()(b) - es.eigenvalues()(a)) < 1e-6) ++b;
          next.push_back(rotated.middleCols(a, b - a));
          a = b;
        }
      }
      groups = std::move(next);
    }

    for (const Eigen::MatrixXcd& g : groups) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) {
        const Eigen::VectorXcd v = g.col(c);
        double vals[3];
        for (int k = 0; k < 3; ++k) {
          vals[k] = (v.adjoint() * ops[k] * v)(0).real();
          const double res = (ops[k] * v - vals[k] * v).norm();
          if (res > kLabelResidual) throw LabelingFailure("label operator does not commute with eigenbasis");
        }
        LabeledEigenstate s;
        s.energy = spectrum.energies(start);
        s.vector = StateVector::from_eigen(v);
        s.n_alpha = static_cast<int>(nearest(vals[0]));
        s.n_beta = static_cast<int>(nearest(vals[1]));
        s.spin = spin_from_s_squared(vals[2]);
        const double s_val = s.spin.value();
        if (std::abs(vals[2] - s_val * (s_val + 1.0)) > kLabelResidual) throw LabelingFailure("non-physical S^2 value");
        s.degeneracy = static_cast<std::size_t>(end - start);
        s.cluster = cluster_id;
        out.push_back(std::move(s));
      }
    }
    start = end;
  }
  return out;
}

std::vector<LabeledEigenstate> labeled_spectrum(const PauliSum& h) {
  if (h.n_qubits() % 2 != 0) throw InvalidArgument("register must hold whole spatial orbitals");
  return sector_labels(exact_spectrum(h), h.n_qubits() / 2);
}

std::vector<LabeledEigenstate> select_states(const std::vector<LabeledEigenstate>& states, int n_alpha, int n_beta,
                                             std::optional<HalfInt> spin) {
  std::vector<LabeledEigenstate> out;
  for (const LabeledEigenstate& s : states) {
    if (s.n_alpha == n_alpha && s.n_beta == n_beta && (!spin || s.spin == *spin)) out.push_back(s);
  }
  return out;
}

CasciReference casci_reference(const std::vector<LabeledEigenstate>& states, const SpinSector& sector,
                               std::size_t n_states) {
  CasciReference ref;
  for (const LabeledEigenstate& s : select_states(states, sector.n_alpha, sector.n_beta, sector.s_target)) {
    if (ref.energies.size() == n_states) break;
    ref.energies.push_back(s.energy);
  }
  ref.complete = ref.energies.size() == n_states;
  return ref;
}

CasciReference casci_reference(const PauliSum& h, const SpinSector& sector, std::size_t n_states) {
  if (n_states == 0) return {};
  return casci_reference(labeled_spectrum(h), sector, n_states);
}

Eigen::MatrixXcd dense_circuit(const Circuit& circuit) {
  const std::size_t n = circuit.n_qubits();
  if (n > kMaxDenseQubits) throw ResourceLimit("dense circuit limited to 14 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    std::vector<Complex> amps(static_cast<std::size_t>(dim), 0.0);
    amps[static_cast<std::size_t>(c)] = 1.0;
    StateVector s(n, std::move(amps));
    s.apply(circuit);
    u.col(c) = s.to_eigen();
  }
  return u;
}

Eigen::MatrixXcd expm_i(const Eigen::MatrixXcd& a, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const Eigen::VectorXcd phases = (Complex(0.0, t) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd dense_extended_hamiltonian(const ExtendedHamiltonian& h_ext) {
  const std::size_t n_anc = h_ext.n_anc();
  const Eigen::MatrixXcd h = to_dense(h_ext.base());
  const auto sys_dim = h.rows();
  const auto n_blocks = static_cast<Eigen::Index>(std::size_t{1} << n_anc);
  const double c = h_ext.norm_bound();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys_dim * n_blocks, sys_dim * n_blocks);
  // Composite index is (system << n_anc) | ancilla.
  for (Eigen::Index u = 0; u < n_blocks; ++u) {
    const double s = h_ext.weights()[static_cast<std::size_t>(u)];
    const Eigen::MatrixXcd block = s * h + (1.0 - s) * c * Eigen::MatrixXcd::Identity(sys_dim, sys_dim);
    for (Eigen::Index i = 0; i < sys_dim; ++i)
      for (Eigen::Index j = 0; j < sys_dim; ++j) out(i * n_blocks + u, j * n_blocks + u) = block(i, j);
  }
  return out;
}

}  // namespace sfvqd
