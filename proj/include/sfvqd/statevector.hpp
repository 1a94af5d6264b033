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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sfvqd/rng.hpp"

namespace sfvqd {

using Complex = std::complex<double>;
using Qubit = std::size_t;

// Register layout. Qubit 0 is the most significant bit of a basis index, so a
// bitstring "q0 q1 ... q(n-1)" reads directly as the binary index. System
// spin orbitals are interleaved (2i = orbital i alpha, 2i+1 = orbital i beta)
// and ancillas are appended after the system qubits.
struct QubitConvention {
  std::size_t n_spatial = 0;

  std::size_t system_qubits() const { return 2 * n_spatial; }
  static Qubit alpha(std::size_t orbital) { return 2 * orbital; }
  static Qubit beta(std::size_t orbital) { return 2 * orbital + 1; }
};

inline std::size_t bit_position(std::size_t n_qubits, Qubit q) { return n_qubits - 1 - q; }

/// A (possibly controlled) unitary on an ordered list of target qubits. The
/// first target is the most significant bit of the matrix row index.
struct Gate {
  std::string name;
  Eigen::MatrixXcd matrix;
  std::vector<Qubit> targets;
  std::vector<Qubit> controls;
};

/// Validates shape, unitarity (1e-8) and index disjointness.
Gate make_gate(std::string name, Eigen::MatrixXcd matrix, std::vector<Qubit> targets,
               std::vector<Qubit> controls = {});

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Appends a gate; indices must be below n_qubits.
  Circuit& add(Gate gate);

  /// Appends `other`, relabelling its qubit i as `qubit_map[i]`.
  Circuit& append(const Circuit& other, std::span<const Qubit> qubit_map);
  Circuit& append(const Circuit& other);

  /// Number of gates with the given name (e.g. "cx").
  std::size_t count(std::string_view name) const;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
};

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;

  /// Applies one gate in place.
  void apply(const Gate& gate);
  /// Applies a circuit in place and fails with InvalidState if the norm drifts
  /// by more than 1e-9.
  void apply(const Circuit& circuit);

  /// this ⊗ |0...0> with `n_extra` appended qubits.
  StateVector with_ancillas(std::size_t n_extra) const;

  Eigen::VectorXcd to_eigen() const;
  static StateVector from_eigen(const Eigen::VectorXcd& v);

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Basis index of a bitstring under the MSB-first convention.
std::size_t basis_index(std::string_view bits);
std::string basis_label(std::size_t index, std::size_t n_qubits);

StateVector init_basis_state(std::size_t n_qubits, std::string_view occupation);

/// Controlled embedding of `matrix` applied in place.
void apply_gate(StateVector& state, const Eigen::MatrixXcd& matrix, std::span<const Qubit> targets,
                std::span<const Qubit> controls = {});

/// <a|b>.
Complex inner_product(const StateVector& a, const StateVector& b);

struct MeasurementResult {
  std::string outcome;  // one character per measured qubit, in request order
  StateVector collapsed;
};

MeasurementResult measure_subset(const StateVector& state, std::span<const Qubit> qubits, Rng& rng);

/// Born probabilities over outcomes of `qubits`; entry u has qubits[0] as its
/// most significant bit.
std::vector<double> marginal_probabilities(const StateVector& state, std::span<const Qubit> qubits);
std::map<std::string, double> marginal_distribution(const StateVector& state,
                                                    std::span<const Qubit> qubits);

namespace gates {

Eigen::Matrix2cd hadamard_matrix();
Eigen::Matrix2cd x_matrix();
Eigen::Matrix2cd rz_matrix(double angle);
Eigen::Matrix2cd ry_matrix(double angle);
Eigen::Matrix2cd phase_matrix(double angle);

Gate h(Qubit q);
Gate x(Qubit q);
Gate rz(Qubit q, double angle);
Gate ry(Qubit q, double angle);
Gate phase(Qubit q, double angle);
Gate cx(Qubit control, Qubit target);
Gate cphase(Qubit control, Qubit target, double angle);
Gate swap(Qubit a, Qubit b);

}  // namespace gates

}  // namespace sfvqd
