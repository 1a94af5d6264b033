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

#include "sfvqd/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "sfvqd/errors.hpp"
#include "sfvqd/kernels.hpp"

namespace sfvqd {

namespace {

constexpr double kUnitaryTolerance = 1e-8;
constexpr double kNormDriftTolerance = 1e-9;

void check_disjoint(const std::vector<Qubit>& targets, const std::vector<Qubit>& controls) {
  std::set<Qubit> seen;
  for (Qubit q : targets) {
    if (!seen.insert(q).second) throw InvalidArgument("gate qubit index repeated: " + std::to_string(q));
  }
  for (Qubit q : controls) {
    if (!seen.insert(q).second) throw InvalidArgument("gate qubit index repeated: " + std::to_string(q));
  }
}

}  // namespace

Gate make_gate(std::string name, Eigen::MatrixXcd matrix, std::vector<Qubit> targets,
               std::vector<Qubit> controls) {
  if (targets.empty()) throw InvalidArgument("gate '" + name + "' has no targets");
  const Eigen::Index dim = Eigen::Index{1} << targets.size();
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw InvalidArgument("gate '" + name + "' matrix does not match its target count");
  }
  check_disjoint(targets, controls);
  const double defect =
      (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTolerance) {
    throw InvalidGate("gate '" + name + "' is not unitary (defect " + std::to_string(defect) + ")");
  }
  return Gate{std::move(name), std::move(matrix), std::move(targets), std::move(controls)};
}

Circuit& Circuit::add(Gate gate) {
  for (Qubit q : gate.targets) {
    if (q >= n_qubits_) throw InvalidArgument("target qubit out of range: " + std::to_string(q));
  }
  for (Qubit q : gate.controls) {
    if (q >= n_qubits_) throw InvalidArgument("control qubit out of range: " + std::to_string(q));
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other, std::span<const Qubit> qubit_map) {
  if (qubit_map.size() != other.n_qubits()) throw InvalidArgument("qubit map width mismatch");
  for (const Gate& g : other.gates()) {
    Gate mapped = g;
    for (Qubit& q : mapped.targets) q = qubit_map[q];
    for (Qubit& q : mapped.controls) q = qubit_map[q];
    check_disjoint(mapped.targets, mapped.controls);
    add(std::move(mapped));
  }
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits() > n_qubits_) throw InvalidArgument("appended circuit is wider than target");
  for (const Gate& g : other.gates()) add(g);
  return *this;
}

std::size_t Circuit::count(std::string_view name) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [&](const Gate& g) { return g.name == name; }));
}

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amplitudes_(std::size_t{1} << n_qubits, Complex{0.0, 0.0}) {
  if (n_qubits > 30) throw ResourceLimit("statevector wider than 30 qubits");
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("amplitude count is not 2^n_qubits");
  }
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amplitudes_)); }

void StateVector::apply(const Gate& gate) {
  for (Qubit q : gate.targets) {
    if (q >= n_qubits_) throw InvalidArgument("gate target outside register");
  }
  for (Qubit q : gate.controls) {
    if (q >= n_qubits_) throw InvalidArgument("gate control outside register");
  }
  kernels::apply_matrix(amplitudes_, n_qubits_, gate.matrix, gate.targets, gate.controls);
}

void StateVector::apply(const Circuit& circuit) {
  if (circuit.n_qubits() != n_qubits_) throw InvalidArgument("circuit width does not match state");
  const double before = norm();
  for (const Gate& g : circuit.gates()) {
    kernels::apply_matrix(amplitudes_, n_qubits_, g.matrix, g.targets, g.controls);
  }
  const double after = norm();
  if (std::abs(after - before) > kNormDriftTolerance) {
    throw InvalidState("norm drift after circuit: " + std::to_string(before) + " -> " +
                       std::to_string(after));
  }
}

StateVector StateVector::with_ancillas(std::size_t n_extra) const {
  std::vector<Complex> out(amplitudes_.size() << n_extra, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) out[i << n_extra] = amplitudes_[i];
  return StateVector(n_qubits_ + n_extra, std::move(out));
}

Eigen::VectorXcd StateVector::to_eigen() const {
  return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), static_cast<Eigen::Index>(dim()));
}

StateVector StateVector::from_eigen(const Eigen::VectorXcd& v) {
  const auto size = static_cast<std::size_t>(v.size());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  return StateVector(n, std::vector<Complex>(v.data(), v.data() + v.size()));
}

std::size_t basis_index(std::string_view bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("bitstring contains a non-binary character");
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  return index;
}

std::string basis_label(std::size_t index, std::size_t n_qubits) {
  std::string out(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((index >> bit_position(n_qubits, q)) & 1) out[q] = '1';
  }
  return out;
}

StateVector init_basis_state(std::size_t n_qubits, std::string_view occupation) {
  if (occupation.size() != n_qubits) {
    throw InvalidArgument("occupation length " + std::to_string(occupation.size()) +
                          " does not match " + std::to_string(n_qubits) + " qubits");
  }
  StateVector s(n_qubits);
  s[0] = 0.0;
  s[basis_index(occupation)] = 1.0;
  return s;
}

void apply_gate(StateVector& state, const Eigen::MatrixXcd& matrix, std::span<const Qubit> targets,
                std::span<const Qubit> controls) {
  Gate g = make_gate("custom", matrix, {targets.begin(), targets.end()}, {controls.begin(), controls.end()});
  state.apply(g);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw InvalidArgument("inner product of states of different width");
  return kernels::inner_product(a.amplitudes(), b.amplitudes());
}

namespace {

void check_qubit_list(const StateVector& state, std::span<const Qubit> qubits) {
  if (qubits.empty()) throw InvalidArgument("empty qubit list");
  std::set<Qubit> seen;
  for (Qubit q : qubits) {
    if (q >= state.n_qubits()) throw InvalidArgument("qubit index out of range");
    if (!seen.insert(q).second) throw InvalidArgument("qubit listed twice");
  }
}

std::size_t outcome_of(std::size_t index, std::size_t n_qubits, std::span<const Qubit> qubits) {
  std::size_t u = 0;
  for (Qubit q : qubits) u = (u << 1) | ((index >> bit_position(n_qubits, q)) & 1);
  return u;
}

}  // namespace

std::vector<double> marginal_probabilities(const StateVector& state, std::span<const Qubit> qubits) {
  check_qubit_list(state, qubits);
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) probs[outcome_of(i, state.n_qubits(), qubits)] += std::norm(amps[i]);
  return probs;
}

std::map<std::string, double> marginal_distribution(const StateVector& state, std::span<const Qubit> qubits) {
  const std::vector<double> probs = marginal_probabilities(state, qubits);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (total <= 0.0) throw InvalidState("zero-norm state");
  std::map<std::string, double> out;
  for (std::size_t u = 0; u < probs.size(); ++u) {
    if (probs[u] > 0.0) out[basis_label(u, qubits.size())] = probs[u] / total;
  }
  return out;
}

MeasurementResult measure_subset(const StateVector& state, std::span<const Qubit> qubits, Rng& rng) {
  const std::vector<double> probs = marginal_probabilities(state, qubits);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 1e-300)) throw InvalidState("cannot measure a zero-norm state");
  const double r = rng.uniform() * total;
  double acc = 0.0;
  std::size_t chosen = probs.size() - 1;
  for (std::size_t u = 0; u < probs.size(); ++u) {
    acc += probs[u];
    if (r < acc && probs[u] > 0.0) {
      chosen = u;
      break;
    }
  }
  while (probs[chosen] <= 0.0 && chosen > 0) --chosen;

  std::vector<Complex> collapsed(state.dim(), Complex{0.0, 0.0});
  const double scale = 1.0 / std::sqrt(probs[chosen]);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (outcome_of(i, state.n_qubits(), qubits) == chosen) collapsed[i] = amps[i] * scale;
  }
  return {basis_label(chosen, qubits.size()), StateVector(state.n_qubits(), std::move(collapsed))};
}

namespace gates {

Eigen::Matrix2cd hadamard_matrix() {
  const double s = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix2cd m;
  m << s, s, s, -s;
  return m;
}

Eigen::Matrix2cd x_matrix() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd rz_matrix(double angle) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -angle / 2.0);
  m(1, 1) = std::polar(1.0, angle / 2.0);
  return m;
}

Eigen::Matrix2cd ry_matrix(double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return m;
}

Eigen::Matrix2cd phase_matrix(double angle) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  m(1, 1) = std::polar(1.0, angle);
  return m;
}

Gate h(Qubit q) { return make_gate("h", hadamard_matrix(), {q}); }
Gate x(Qubit q) { return make_gate("x", x_matrix(), {q}); }
Gate rz(Qubit q, double angle) { return make_gate("rz", rz_matrix(angle), {q}); }
Gate ry(Qubit q, double angle) { return make_gate("ry", ry_matrix(angle), {q}); }
Gate phase(Qubit q, double angle) { return make_gate("p", phase_matrix(angle), {q}); }
Gate cx(Qubit control, Qubit target) { return make_gate("cx", x_matrix(), {target}, {control}); }
Gate cphase(Qubit control, Qubit target, double angle) {
  return make_gate("cp", phase_matrix(angle), {target}, {control});
}
Gate swap(Qubit a, Qubit b) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return make_gate("swap", m, {a, b});
}

}  // namespace gates

}  // namespace sfvqd
