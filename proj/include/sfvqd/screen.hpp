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
#include <map>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sfvqd/pauli.hpp"
#include "sfvqd/rng.hpp"
#include "sfvqd/spinops.hpp"
#include "sfvqd/statevector.hpp"

namespace sfvqd {

// Ancilla-assisted S_x (or S_y) phase-estimation screen.
//
// The ancilla register is appended after the system qubits and read MSB-first.
// Outcomes are signed: an unsigned readout u decodes to u for u < 2^(n-1) and
// to u - 2^n otherwise. After the screen, a system component with spin
// projection m along the screening axis leaves the ancillas in |m mod 2^n>.

/// Smallest n with 2^n >= 2 S_max + 1 (at least 1), where
/// S_max = min(n_elec, 2 n_spatial - n_elec) / 2.
std::size_t required_ancillas(std::size_t n_spatial, std::size_t n_electrons);

int decode_mx(std::string_view outcome, std::size_t n_anc);
int decode_mx(std::size_t unsigned_value, std::size_t n_anc);

/// Two-qubit gate on an (alpha, beta) pair realizing exp(i 2 theta s_axis) on the
/// singly-occupied subspace and identity elsewhere. x: A(theta, -pi/2);
/// y: A(theta, 0).
Eigen::Matrix4cd pair_rotation(Axis axis, double theta);

Circuit qft(std::size_t n_qubits);
Circuit inverse_qft(std::size_t n_qubits);

/// Hadamards on the ancillas, the controlled pair-rotation ladder
/// (ancilla bit of weight 2^b controls exp(i 2 pi 2^b / 2^n S_axis)), then the
/// inverse QFT. Acts on 2 n_spatial + n_anc qubits.
Circuit build_screen_circuit(std::size_t n_spatial, std::size_t n_anc, Axis axis);

/// system ⊗ |0...0>, pushed through build_screen_circuit.
StateVector apply_screen(const StateVector& system, std::size_t n_anc, Axis axis = Axis::X);

/// Ancilla marginal keyed by decoded signed m.
std::map<int, double> ancilla_distribution(const StateVector& screened, std::size_t n_anc);

/// Ancilla-block-diagonal extended Hamiltonian
///   (H - c_H I) ⊗ D + c_H I ⊗ I,  D = sum_j s(j) |j><j|,
/// with s(j) = 1 when |m(j)| <= |m_z| and c_penalty otherwise.
class ExtendedHamiltonian {
 public:
  ExtendedHamiltonian(PauliSum base, const SpinSector& sector, std::size_t n_anc, double c_penalty);

  const PauliSum& base() const { return base_; }
  double norm_bound() const { return norm_bound_; }
  double c_penalty() const { return c_penalty_; }
  std::size_t n_anc() const { return n_anc_; }
  std::size_t system_qubits() const { return base_.n_qubits(); }
  /// s(u) indexed by unsigned ancilla value.
  const std::vector<double>& weights() const { return weights_; }
  bool valid(int m_x) const;

  /// <Psi|H_ext|Psi> on a system ⊗ ancilla state.
  double expectation(const StateVector& composite) const;

 private:
  PauliSum base_;
  std::shared_ptr<const CompiledOperator> compiled_;
  double norm_bound_;
  double c_penalty_;
  std::size_t n_anc_;
  HalfInt m_z_;
  std::vector<double> weights_;
};

ExtendedHamiltonian build_extended_hamiltonian(const PauliSum& base, const SpinSector& sector,
                                               std::size_t n_anc, double c_penalty = 0.0);

struct ShotFilterResult {
  bool passed = false;
  int m_x = 0;
  StateVector collapsed;
};

/// Measures the ancillas of a screened state; passes when |m_x| <= S_target.
ShotFilterResult shot_filter(const StateVector& screened, const SpinSector& sector, std::size_t n_anc, Rng& rng);

}  // namespace sfvqd
