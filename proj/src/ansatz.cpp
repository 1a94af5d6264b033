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

#include "sfvqd/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "sfvqd/errors.hpp"

namespace sfvqd {

namespace {

constexpr double kPi = std::numbers::pi;

// Applies one brickwork sublayer pair over `lanes`, consuming angles from
// theta/phi starting at `cursor`.
void add_brickwork(Circuit& c, const std::vector<Qubit>& lanes, const AnsatzParams& p, std::size_t& cursor) {
  for (std::size_t start : {std::size_t{0}, std::size_t{1}}) {
    for (std::size_t i = start; i + 1 < lanes.size(); i += 2) {
      c.add(make_gate("A", a_gate_matrix(p.theta[cursor], p.phi[cursor]), {lanes[i], lanes[i + 1]}));
      ++cursor;
    }
  }
}

void check_sizes(const AnsatzParams& p, AnsatzKind kind, std::size_t n_spatial, std::size_t layers) {
  if (p.kind != kind) throw InvalidArgument("ansatz parameters are for " + to_string(p.kind));
  if (p.layers != layers) throw InvalidArgument("ansatz parameters carry a different layer count");
  const std::size_t lanes_per_domain = (kind == AnsatzKind::SP) ? 2 * n_spatial : n_spatial;
  const std::size_t domains = (kind == AnsatzKind::SP) ? 1 : 2;
  const std::size_t a_gates = layers * domains * brickwork_gate_count(lanes_per_domain);
  const std::size_t xi = (kind == AnsatzKind::SSP) ? layers * 3 * n_spatial : 0;
  if (p.theta.size() != a_gates || p.phi.size() != a_gates || p.xi.size() != xi) {
    throw InvalidArgument("ansatz parameter vector sizes do not match the layout");
  }
}

}  // namespace

std::string to_string(AnsatzKind kind) { return kind == AnsatzKind::SP ? "SP" : "SSP"; }

AnsatzKind ansatz_kind_from_string(const std::string& name) {
  if (name == "SP") return AnsatzKind::SP;
  if (name == "SSP") return AnsatzKind::SSP;
  throw InvalidArgument("unknown ansatz kind '" + name + "'");
}

std::vector<double> AnsatzParams::flatten() const {
  std::vector<double> out;
  out.reserve(theta.size() + phi.size() + xi.size());
  out.insert(out.end(), theta.begin(), theta.end());
  out.insert(out.end(), phi.begin(), phi.end());
  out.insert(out.end(), xi.begin(), xi.end());
  return out;
}

AnsatzParams AnsatzParams::from_flat(AnsatzKind kind, std::size_t n_spatial, std::size_t layers,
                                     std::span<const double> flat) {
  if (flat.size() != param_count(kind, n_spatial, layers)) {
    throw InvalidArgument("flat parameter vector has " + std::to_string(flat.size()) + " entries, expected " +
                          std::to_string(param_count(kind, n_spatial, layers)));
  }
  const std::size_t lanes = (kind == AnsatzKind::SP) ? 2 * n_spatial : n_spatial;
  const std::size_t domains = (kind == AnsatzKind::SP) ? 1 : 2;
  const std::size_t a = layers * domains * brickwork_gate_count(lanes);
  AnsatzParams p;
  p.kind = kind;
  p.layers = layers;
  p.theta.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(a));
  p.phi.assign(flat.begin() + static_cast<std::ptrdiff_t>(a), flat.begin() + static_cast<std::ptrdiff_t>(2 * a));
  p.xi.assign(flat.begin() + static_cast<std::ptrdiff_t>(2 * a), flat.end());
  return p;
}

Eigen::Matrix4cd a_gate_matrix(double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = c;
  m(1, 2) = -std::polar(1.0, phi) * s;
  m(2, 1) = std::polar(1.0, -phi) * s;
  m(2, 2) = c;
  m(3, 3) = 1.0;
  return m;
}

Circuit a_gate_decomposition(double theta, double phi) {
  // A(theta, -pi/2) = exp(i theta/2 (XX + YY)), built with the canonical
  // three-CNOT interaction circuit; conjugating by a phase on qubit 0 then moves
  // the off-diagonal phase from -pi/2 to phi.
  Circuit c(2);
  c.add(gates::rz(0, phi + kPi / 2.0));
  c.add(gates::rz(1, kPi / 2.0));
  c.add(gates::cx(1, 0));
  c.add(gates::rz(0, kPi / 2.0));
  c.add(gates::ry(1, kPi / 2.0 - theta));
  c.add(gates::cx(0, 1));
  c.add(gates::ry(1, theta - kPi / 2.0));
  c.add(gates::cx(1, 0));
  c.add(gates::rz(0, -phi - kPi));
  return c;
}

Eigen::Matrix4cd phase_gate_matrix(double xi1, double xi2, double xi3) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, xi1);
  m(2, 2) = std::polar(1.0, xi2);
  m(3, 3) = std::polar(1.0, xi1 + xi2 + xi3);
  return m;
}

std::size_t brickwork_gate_count(std::size_t lanes) { return lanes == 0 ? 0 : lanes - 1; }

std::size_t param_count(AnsatzKind kind, std::size_t n_spatial, std::size_t layers) {
  if (kind == AnsatzKind::SP) return layers * 2 * brickwork_gate_count(2 * n_spatial);
  return layers * (4 * brickwork_gate_count(n_spatial) + 3 * n_spatial);
}

Circuit build_sp(std::size_t n_qubits, std::size_t layers, const AnsatzParams& params) {
  if (n_qubits % 2 != 0) throw InvalidArgument("SP register must hold whole spatial orbitals");
  check_sizes(params, AnsatzKind::SP, n_qubits / 2, layers);
  std::vector<Qubit> lanes(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) lanes[q] = q;
  Circuit c(n_qubits);
  std::size_t cursor = 0;
  for (std::size_t l = 0; l < layers; ++l) add_brickwork(c, lanes, params, cursor);
  return c;
}

Circuit build_ssp(std::size_t n_spatial, std::size_t layers, const AnsatzParams& params) {
  check_sizes(params, AnsatzKind::SSP, n_spatial, layers);
  std::vector<Qubit> alpha(n_spatial), beta(n_spatial);
  for (std::size_t i = 0; i < n_spatial; ++i) {
    alpha[i] = QubitConvention::alpha(i);
    beta[i] = QubitConvention::beta(i);
  }
  Circuit c(2 * n_spatial);
  std::size_t cursor = 0;
  std::size_t xi = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    add_brickwork(c, alpha, params, cursor);
    add_brickwork(c, beta, params, cursor);
    for (std::size_t i = 0; i < n_spatial; ++i) {
      // With (alpha, beta) ordered MSB-first, |01> is beta-occupied: xi1 sits on
      // the beta lane and xi2 on the alpha lane.
      c.add(gates::phase(beta[i], params.xi[xi]));
      c.add(gates::phase(alpha[i], params.xi[xi + 1]));
      c.add(gates::cphase(alpha[i], beta[i], params.xi[xi + 2]));
      xi += 3;
    }
  }
  return c;
}

AnsatzParams init_params(AnsatzKind kind, std::size_t n_spatial, std::size_t layers, Rng& rng, double stddev) {
  std::vector<double> flat(param_count(kind, n_spatial, layers));
  for (double& v : flat) v = rng.normal(0.0, stddev);
  return AnsatzParams::from_flat(kind, n_spatial, layers, flat);
}

StateVector reference_state(std::size_t n_spatial, const SpinSector& sector) {
  sector.validate(n_spatial);
  std::string bits(2 * n_spatial, '0');
  for (int i = 0; i < sector.n_alpha; ++i) bits[QubitConvention::alpha(static_cast<std::size_t>(i))] = '1';
  for (int i = 0; i < sector.n_beta; ++i) bits[QubitConvention::beta(static_cast<std::size_t>(i))] = '1';
  return init_basis_state(2 * n_spatial, bits);
}

Circuit AnsatzSpec::build(std::span<const double> flat) const {
  const AnsatzParams p = AnsatzParams::from_flat(kind, n_spatial, layers, flat);
  return kind == AnsatzKind::SP ? build_sp(2 * n_spatial, layers, p) : build_ssp(n_spatial, layers, p);
}

StateVector AnsatzSpec::prepare(std::span<const double> flat, const StateVector& reference) const {
  StateVector s = reference;
  s.apply(build(flat));
  return s;
}

}  // namespace sfvqd
