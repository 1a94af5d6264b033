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

#include "sfvqd/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "sfvqd/errors.hpp"

namespace sfvqd {

namespace {

constexpr std::size_t kDenseQubitLimit = 14;

struct Masks {
  std::uint64_t x = 0;  // X or Y
  std::uint64_t z = 0;  // Z or Y
  int n_y = 0;
};

Masks masks_of(std::string_view word) {
  Masks m;
  const std::size_t n = word.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << bit_position(n, q);
    switch (word[q]) {
      case 'X':
        m.x |= bit;
        break;
      case 'Y':
        m.x |= bit;
        m.z |= bit;
        ++m.n_y;
        break;
      case 'Z':
        m.z |= bit;
        break;
      default:
        break;
    }
  }
  return m;
}

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

// Per-qubit product of single-qubit Paulis: returns op and the power of i.
std::pair<char, int> multiply_single(char a, char b) {
  if (a == 'I') return {b, 0};
  if (b == 'I') return {a, 0};
  if (a == b) return {'I', 0};
  // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
  const std::string cyclic = "XYZ";
  const auto ia = cyclic.find(a), ib = cyclic.find(b);
  const char c = cyclic[3 - ia - ib];
  return {c, ((ia + 1) % 3 == ib) ? 1 : 3};
}

void check_word(std::string_view word, std::size_t n_qubits) {
  if (word.size() != n_qubits) {
    throw InvalidArgument("Pauli word '" + std::string(word) + "' does not have length " +
                          std::to_string(n_qubits));
  }
  for (char c : word) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw InvalidArgument("Pauli word contains '" + std::string(1, c) + "'");
    }
  }
}

}  // namespace

char to_char(PauliOp op) {
  switch (op) {
    case PauliOp::X:
      return 'X';
    case PauliOp::Y:
      return 'Y';
    case PauliOp::Z:
      return 'Z';
    default:
      return 'I';
  }
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliOp::I;
    case 'X':
      return PauliOp::X;
    case 'Y':
      return PauliOp::Y;
    case 'Z':
      return PauliOp::Z;
    default:
      throw InvalidArgument("not a Pauli character: " + std::string(1, c));
  }
}

std::map<Qubit, PauliOp> PauliTerm::operators() const {
  std::map<Qubit, PauliOp> out;
  for (std::size_t q = 0; q < word.size(); ++q) {
    if (word[q] != 'I') out[q] = pauli_from_char(word[q]);
  }
  return out;
}

bool PauliTerm::is_identity() const {
  return std::all_of(word.begin(), word.end(), [](char c) { return c == 'I'; });
}

PauliSum::PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
  for (auto& t : terms) add(t.coefficient, std::move(t.word));
  canonicalize();
}

PauliSum PauliSum::term(std::size_t n_qubits, double coefficient, const std::map<Qubit, PauliOp>& operators) {
  std::string word(n_qubits, 'I');
  for (const auto& [q, op] : operators) {
    if (q >= n_qubits) throw InvalidArgument("Pauli operator on qubit outside register");
    word[q] = to_char(op);
  }
  PauliSum s(n_qubits);
  s.add(coefficient, std::move(word));
  return s.canonicalize();
}

PauliSum PauliSum::identity(std::size_t n_qubits, double coefficient) {
  PauliSum s(n_qubits);
  s.add(coefficient, std::string(n_qubits, 'I'));
  return s.canonicalize();
}

void PauliSum::add(double coefficient, std::string word) {
  check_word(word, n_qubits_);
  if (!std::isfinite(coefficient)) throw InvalidArgument("non-finite Pauli coefficient");
  terms_.push_back({coefficient, std::move(word)});
}

PauliSum& PauliSum::canonicalize() {
  std::map<std::string, double> merged;
  for (const auto& t : terms_) merged[t.word] += t.coefficient;
  terms_.clear();
  for (auto& [word, c] : merged) {
    if (std::abs(c) >= kDropThreshold) terms_.push_back({c, word});
  }
  return *this;
}

bool PauliSum::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (std::abs(terms_[i].coefficient) < kDropThreshold) return false;
    if (i > 0 && !(terms_[i - 1].word < terms_[i].word)) return false;
  }
  return true;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) throw InvalidArgument("adding Pauli sums of different width");
  for (const auto& t : other.terms_) terms_.push_back(t);
  return canonicalize();
}

PauliSum& PauliSum::operator*=(double scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  return canonicalize();
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) throw InvalidArgument("multiplying Pauli sums of different width");
  std::map<std::string, Complex> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      std::string word(a.n_qubits_, 'I');
      int power = 0;
      for (std::size_t q = 0; q < word.size(); ++q) {
        const auto [c, p] = multiply_single(ta.word[q], tb.word[q]);
        word[q] = c;
        power += p;
      }
      acc[word] += ta.coefficient * tb.coefficient * i_power(power);
    }
  }
  PauliSum out(a.n_qubits_);
  for (const auto& [word, c] : acc) {
    if (std::abs(c.imag()) > 1e-10) {
      throw InvalidArgument("Pauli product is not Hermitian (term " + word + ")");
    }
    out.terms_.push_back({c.real(), word});
  }
  return out.canonicalize();
}

CompiledOperator::CompiledOperator(const PauliSum& op) : n_qubits_(op.n_qubits()) {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (const auto& t : op.terms()) {
    const Masks m = masks_of(t.word);
    auto [it, inserted] = slot.try_emplace(m.x, flips_.size());
    if (inserted) {
      flips_.push_back(m.x);
      diagonals_.emplace_back(dim, Complex{0.0, 0.0});
    }
    auto& d = diagonals_[it->second];
    const Complex base = t.coefficient * i_power(m.n_y);
    for (std::size_t i = 0; i < dim; ++i) {
      d[i] += (std::popcount(i & m.z) & 1) ? -base : base;
    }
  }
}

void CompiledOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
  std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
  const auto n = static_cast<std::int64_t>(in.size());
  for (std::size_t g = 0; g < flips_.size(); ++g) {
    const std::uint64_t f = flips_[g];
    const Complex* d = diagonals_[g].data();
    // i -> i ^ f is a bijection, so writes never collide.
#pragma omp parallel for if (in.size() >= 4096)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::uint64_t>(i) ^ f] += d[i] * in[i];
  }
}

Complex CompiledOperator::expectation(std::span<const Complex> state) const {
  double re = 0.0, im = 0.0;
  const auto n = static_cast<std::int64_t>(state.size());
  const Complex* s = state.data();
  for (std::size_t g = 0; g < flips_.size(); ++g) {
    const std::uint64_t f = flips_[g];
    const Complex* d = diagonals_[g].data();
#pragma omp parallel for reduction(+ : re, im) if (state.size() >= 4096)
    for (std::int64_t i = 0; i < n; ++i) {
      const Complex v = std::conj(s[static_cast<std::uint64_t>(i) ^ f]) * d[i] * s[i];
      re += v.real();
      im += v.imag();
    }
  }
  return {re, im};
}

double expectation(const StateVector& state, const CompiledOperator& op) {
  if (state.n_qubits() != op.n_qubits()) throw InvalidArgument("operator width does not match state");
  const Complex e = op.expectation(state.amplitudes());
  if (std::abs(e.imag()) > 1e-9) {
    throw InvalidState("expectation has imaginary residue " + std::to_string(e.imag()));
  }
  return e.real();
}

double expectation(const StateVector& state, const PauliSum& op) {
  if (state.n_qubits() != op.n_qubits()) throw InvalidArgument("operator width does not match state");
  return expectation(state, CompiledOperator(op));
}

double one_norm(const PauliSum& op) {
  double acc = 0.0;
  for (const auto& t : op.terms()) acc += std::abs(t.coefficient);
  return acc;
}

Eigen::MatrixXcd to_dense(const PauliSum& op) {
  if (op.n_qubits() > kDenseQubitLimit) {
    throw ResourceLimit("dense materialization limited to " + std::to_string(kDenseQubitLimit) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : op.terms()) {
    const Masks mk = masks_of(t.word);
    const Complex base = t.coefficient * i_power(mk.n_y);
    for (std::size_t i = 0; i < dim; ++i) {
      const Complex v = (std::popcount(i & mk.z) & 1) ? -base : base;
      m(static_cast<Eigen::Index>(i ^ mk.x), static_cast<Eigen::Index>(i)) += v;
    }
  }
  return m;
}

StateVector apply_sum(const StateVector& state, const PauliSum& op) {
  if (state.n_qubits() != op.n_qubits()) throw InvalidArgument("operator width does not match state");
  std::vector<Complex> out(state.dim());
  CompiledOperator(op).apply(state.amplitudes(), out);
  return StateVector(state.n_qubits(), std::move(out));
}

}  // namespace sfvqd
