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
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sfvqd/statevector.hpp"

namespace sfvqd {

enum class PauliOp : std::uint8_t { I, X, Y, Z };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// One weighted Pauli string. The word is fixed-width over {I,X,Y,Z} and read
/// qubit-0-first.
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;

  std::map<Qubit, PauliOp> operators() const;
  bool is_identity() const;
};

/// Real-weighted (hence Hermitian) sum of Pauli strings. Canonical form has no
/// repeated words, no coefficients below 1e-12 in magnitude, and terms sorted by
/// word.
class PauliSum {
 public:
  static constexpr double kDropThreshold = 1e-12;

  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms);

  /// Single term; `operators` maps qubit -> op and everything else is identity.
  static PauliSum term(std::size_t n_qubits, double coefficient, const std::map<Qubit, PauliOp>& operators);
  static PauliSum identity(std::size_t n_qubits, double coefficient = 1.0);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Appends without canonicalizing.
  void add(double coefficient, std::string word);

  PauliSum& canonicalize();
  bool is_canonical() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) {
    PauliSum nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend PauliSum operator*(PauliSum a, double s) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

  /// Product A·B. The result must be Hermitian (e.g. squares of Hermitian sums,
  /// or products of commuting ones); a surviving imaginary part raises.
  friend PauliSum multiply(const PauliSum& a, const PauliSum& b);

 private:
  std::size_t n_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Matrix-free form of a PauliSum: terms sharing an X-flip mask are folded into
/// one diagonal, so applying the operator costs one pass per distinct mask.
class CompiledOperator {
 public:
  explicit CompiledOperator(const PauliSum& op);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t groups() const { return flips_.size(); }

  /// out = op · in (out is overwritten).
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  /// <state|op|state> without normalization.
  Complex expectation(std::span<const Complex> state) const;

 private:
  std::size_t n_qubits_;
  std::vector<std::uint64_t> flips_;
  std::vector<std::vector<Complex>> diagonals_;
};

/// <state|op|state>; the imaginary residue must be below 1e-9.
double expectation(const StateVector& state, const PauliSum& op);
double expectation(const StateVector& state, const CompiledOperator& op);

/// Sum of |c_P|, an upper bound on the spectral norm.
double one_norm(const PauliSum& op);

/// Dense 2^n x 2^n matrix; n must not exceed 14.
Eigen::MatrixXcd to_dense(const PauliSum& op);

/// op|state>, unnormalized.
StateVector apply_sum(const StateVector& state, const PauliSum& op);

}  // namespace sfvqd
