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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sfvqd/pauli.hpp"
#include "sfvqd/screen.hpp"
#include "sfvqd/spinops.hpp"
#include "sfvqd/statevector.hpp"

namespace sfvqd {

struct Spectrum {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // columns
};

/// Dense Hermitian eigendecomposition (at most 14 qubits).
Spectrum exact_spectrum(const PauliSum& h);

struct LabeledEigenstate {
  double energy = 0.0;
  StateVector vector{0};
  int n_alpha = 0;
  int n_beta = 0;
  HalfInt spin;
  /// Size of the energy cluster this state belongs to.
  std::size_t degeneracy = 1;
  std::size_t cluster = 0;
};

/// Resolves degenerate clusters (gap below `cluster_gap`) against N_alpha,
/// N_beta and S^2 in turn and labels every eigenvector.
std::vector<LabeledEigenstate> sector_labels(const Spectrum& spectrum, std::size_t n_spatial,
                                             double cluster_gap = 1e-9);

std::vector<LabeledEigenstate> labeled_spectrum(const PauliSum& h);

/// States matching (n_alpha, n_beta) and, if given, total spin.
std::vector<LabeledEigenstate> select_states(const std::vector<LabeledEigenstate>& states, int n_alpha, int n_beta,
                                             std::optional<HalfInt> spin = std::nullopt);

struct CasciReference {
  std::vector<double> energies;
  /// False when fewer matching states exist than were requested.
  bool complete = true;
};

CasciReference casci_reference(const PauliSum& h, const SpinSector& sector, std::size_t n_states);
CasciReference casci_reference(const std::vector<LabeledEigenstate>& states, const SpinSector& sector,
                               std::size_t n_states);

/// Unitary of a circuit, built column by column.
Eigen::MatrixXcd dense_circuit(const Circuit& circuit);

/// exp(i t A) for Hermitian A.
Eigen::MatrixXcd expm_i(const Eigen::MatrixXcd& a, double t);

/// H_ext written out on the full system ⊗ ancilla register.
Eigen::MatrixXcd dense_extended_hamiltonian(const ExtendedHamiltonian& h_ext);

/// S from an <S^2> value, rounded to the nearest half-integer.
HalfInt spin_from_s_squared(double s2);

}  // namespace sfvqd
