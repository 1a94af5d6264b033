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

#include "sfvqd/screen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sfvqd/ansatz.hpp"
#include "sfvqd/errors.hpp"

namespace sfvqd {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::size_t required_ancillas(std::size_t n_spatial, std::size_t n_electrons) {
  if (n_electrons == 0 || n_electrons > 2 * n_spatial) {
    throw InvalidArgument("electron count must lie in (0, 2 n_spatial]");
  }
  if (n_electrons % 2 != 0) throw UnsupportedSector("odd electron count has half-integer spin");
  const std::size_t twice_s_max = std::min(n_electrons, 2 * n_spatial - n_electrons);
  std::size_t n = 1;
  while ((std::size_t{1} << n) < twice_s_max + 1) ++n;
  return n;
}

int decode_mx(std::size_t unsigned_value, std::size_t n_anc) {
  const std::size_t size = std::size_t{1} << n_anc;
  if (unsigned_value >= size) throw InvalidArgument("ancilla value out of range");
  const auto u = static_cast<int>(unsigned_value);
  return unsigned_value < size / 2 ? u : u - static_cast<int>(size);
}

int decode_mx(std::string_view outcome, std::size_t n_anc) {
  if (outcome.size() != n_anc) throw InvalidArgument("ancilla outcome length does not match register");
  return decode_mx(basis_index(outcome), n_anc);
}

Eigen::Matrix4cd pair_rotation(Axis axis, double theta) {
  switch (axis) {
    case Axis::X:
      return a_gate_matrix(theta, -kPi / 2.0);
    case Axis::Y:
      return a_gate_matrix(theta, 0.0);
    default:
      throw InvalidArgument("pair rotations exist for the x and y axes only");
  }
}

Circuit qft(std::size_t n_qubits) {
  if (n_qubits == 0) throw InvalidArgument("QFT needs at least one qubit");
  Circuit c(n_qubits);
  for (std::size_t j = 0; j < n_qubits; ++j) {
    c.add(gates::h(j));
    for (std::size_t k = j + 1; k < n_qubits; ++k) {
      c.add(gates::cphase(k, j, 2.0 * kPi / static_cast<double>(std::size_t{1} << (k - j + 1))));
    }
  }
  for (std::size_t j = 0; j < n_qubits / 2; ++j) c.add(gates::swap(j, n_qubits - 1 - j));
  return c;
}

Circuit inverse_qft(std::size_t n_qubits) {
  const Circuit forward = qft(n_qubits);
  Circuit c(n_qubits);
  const auto& g = forward.gates();
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    c.add(make_gate(it->name, it->matrix.adjoint(), it->targets, it->controls));
  }
  return c;
}

Circuit build_screen_circuit(std::size_t n_spatial, std::size_t n_anc, Axis axis) {
  if (n_spatial == 0 || n_anc == 0) throw InvalidArgument("screen needs a system and an ancilla register");
  const std::size_t n_sys = 2 * n_spatial;
  Circuit c(n_sys + n_anc);
  for (std::size_t a = 0; a < n_anc; ++a) c.add(gates::h(n_sys + a));
  const double base = 2.0 * kPi / static_cast<double>(std::size_t{1} << n_anc);
  for (std::size_t a = 0; a < n_anc; ++a) {
    const Qubit control = n_sys + a;
    const double weight = static_cast<double>(std::size_t{1} << (n_anc - 1 - a));
    // exp(i t S) factorizes over pairs; each pair gate takes the half angle.
    const Eigen::Matrix4cd m = pair_rotation(axis, base * weight / 2.0);
    for (std::size_t i = 0; i < n_spatial; ++i) {
      c.add(make_gate("c-pair", m, {QubitConvention::alpha(i), QubitConvention::beta(i)}, {control}));
    }
  }
  std::vector<Qubit> map(n_anc);
  for (std::size_t a = 0; a < n_anc; ++a) map[a] = n_sys + a;
  c.append(inverse_qft(n_anc), map);
  return c;
}

StateVector apply_screen(const StateVector& system, std::size_t n_anc, Axis axis) {
  if (system.n_qubits() % 2 != 0) throw InvalidArgument("system register must hold whole spatial orbitals");
  StateVector s = system.with_ancillas(n_anc);
  s.apply(build_screen_circuit(system.n_qubits() / 2, n_anc, axis));
  return s;
}

std::map<int, double> ancilla_distribution(const StateVector& screened, std::size_t n_anc) {
  if (n_anc == 0 || n_anc > screened.n_qubits()) throw InvalidArgument("bad ancilla count");
  std::vector<Qubit> anc(n_anc);
  for (std::size_t a = 0; a < n_anc; ++a) anc[a] = screened.n_qubits() - n_anc + a;
  const std::vector<double> probs = marginal_probabilities(screened, anc);
  std::map<int, double> out;
  for (std::size_t u = 0; u < probs.size(); ++u) out[decode_mx(u, n_anc)] += probs[u];
  return out;
}

ExtendedHamiltonian::ExtendedHamiltonian(PauliSum base, const SpinSector& sector, std::size_t n_anc,
                                         double c_penalty)
    : base_(std::move(base)),
      compiled_(std::make_shared<const CompiledOperator>(base_)),
      norm_bound_(one_norm(base_)),
      c_penalty_(c_penalty),
      n_anc_(n_anc),
      m_z_(sector.m_z()),
      weights_(std::size_t{1} << n_anc, c_penalty) {
  if (!(c_penalty < 1.0)) throw InvalidPenalty("c_penalty must be below 1");
  if (n_anc == 0) throw InvalidArgument("extended Hamiltonian needs at least one ancilla");
  for (std::size_t u = 0; u < weights_.size(); ++u) {
    if (valid(decode_mx(u, n_anc))) weights_[u] = 1.0;
  }
}

bool ExtendedHamiltonian::valid(int m_x) const { return HalfInt(m_x).abs() <= m_z_.abs(); }

double ExtendedHamiltonian::expectation(const StateVector& composite) const {
  if (composite.n_qubits() != system_qubits() + n_anc_) {
    throw InvalidArgument("composite state width does not match system + ancillas");
  }
  const std::size_t n_blocks = std::size_t{1} << n_anc_;
  const std::size_t sys_dim = std::size_t{1} << system_qubits();
  const auto amps = composite.amplitudes();
  std::vector<Complex> block(sys_dim);
  double total = 0.0;
  for (std::size_t u = 0; u < n_blocks; ++u) {
    double p = 0.0;
    for (std::size_t i = 0; i < sys_dim; ++i) {
      block[i] = amps[(i << n_anc_) | u];
      p += std::norm(block[i]);
    }
    total += norm_bound_ * p;
    const double s = weights_[u];
    if (s == 0.0 || p == 0.0) continue;
    const Complex e = compiled_->expectation(block);
    total += s * (e.real() - norm_bound_ * p);
  }
  return total;
}

ExtendedHamiltonian build_extended_hamiltonian(const PauliSum& base, const SpinSector& sector, std::size_t n_anc,
                                               double c_penalty) {
  return ExtendedHamiltonian(base, sector, n_anc, c_penalty);
}

ShotFilterResult shot_filter(const StateVector& screened, const SpinSector& sector, std::size_t n_anc, Rng& rng) {
  std::vector<Qubit> anc(n_anc);
  for (std::size_t a = 0; a < n_anc; ++a) anc[a] = screened.n_qubits() - n_anc + a;
  MeasurementResult r = measure_subset(screened, anc, rng);
  const int m = decode_mx(r.outcome, n_anc);
  return {HalfInt(m).abs() <= sector.s_target, m, std::move(r.collapsed)};
}

}  // namespace sfvqd
