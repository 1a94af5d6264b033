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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sfvqd/rng.hpp"
#include "sfvqd/spinops.hpp"
#include "sfvqd/statevector.hpp"

namespace sfvqd {

// Symmetry-preserving ansatz circuits.
//
// SP: per layer, a brickwork of A-gates over all 2n system lanes, first on
// pairs (0,1), (2,3), ... then on (1,2), (3,4), .... Each A-gate carries one
// theta and one phi, so a layer holds 2n - 1 gates and 2(2n - 1) angles.
//
// SSP: per layer, the same brickwork restricted to the alpha lanes
// (0, 2, 4, ...), then to the beta lanes (1, 3, 5, ...), then one phase gate
// P(xi1, xi2, xi3) on every (alpha_i, beta_i) pair. A layer holds 2(n - 1)
// A-gates and n P-gates: 4(n - 1) + 3n angles.

enum class AnsatzKind { SP, SSP };

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_kind_from_string(const std::string& name);

struct AnsatzParams {
  AnsatzKind kind = AnsatzKind::SSP;
  std::size_t layers = 0;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> xi;  // SSP only

  /// theta, then phi, then xi.
  std::vector<double> flatten() const;
  static AnsatzParams from_flat(AnsatzKind kind, std::size_t n_spatial, std::size_t layers,
                                std::span<const double> flat);
};

Eigen::Matrix4cd a_gate_matrix(double theta, double phi);

/// Three-CNOT two-qubit circuit equal to a_gate_matrix up to a global phase.
Circuit a_gate_decomposition(double theta, double phi);

Eigen::Matrix4cd phase_gate_matrix(double xi1, double xi2, double xi3);

/// Number of A-gates in one brickwork layer over `lanes` lanes.
std::size_t brickwork_gate_count(std::size_t lanes);

std::size_t param_count(AnsatzKind kind, std::size_t n_spatial, std::size_t layers);

Circuit build_sp(std::size_t n_qubits, std::size_t layers, const AnsatzParams& params);
Circuit build_ssp(std::size_t n_spatial, std::size_t layers, const AnsatzParams& params);

/// Every angle drawn from N(0, 0.3^2).
AnsatzParams init_params(AnsatzKind kind, std::size_t n_spatial, std::size_t layers, Rng& rng,
                         double stddev = 0.3);

/// Fills the lowest n_alpha alpha orbitals and lowest n_beta beta orbitals.
StateVector reference_state(std::size_t n_spatial, const SpinSector& sector);

/// Kind + shape of an ansatz; builds its circuit from a flat parameter vector.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::SSP;
  std::size_t n_spatial = 0;
  std::size_t layers = 0;

  std::size_t n_params() const { return param_count(kind, n_spatial, layers); }
  Circuit build(std::span<const double> flat) const;
  /// |psi(params)> = circuit · reference.
  StateVector prepare(std::span<const double> flat, const StateVector& reference) const;
};

}  // namespace sfvqd
