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

#include "sfvqd/spinops.hpp"

#include <cmath>
#include <numbers>

#include "sfvqd/errors.hpp"

namespace sfvqd {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void SpinSector::validate(std::size_t n_spatial) const {
  const int n = static_cast<int>(n_spatial);
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n || n_beta > n) {
    throw InvalidArgument("sector (" + std::to_string(n_alpha) + ", " + std::to_string(n_beta) +
                          ") does not fit in " + std::to_string(n_spatial) + " spatial orbitals");
  }
  if (n_electrons() % 2 != 0) {
    throw UnsupportedSector("odd electron count " + std::to_string(n_electrons()) +
                            " gives half-integer spin, which the screen cannot encode");
  }
  if (s_target < m_z().abs()) {
    throw InvalidArgument("target spin " + s_target.str() + " is below |m_z| = " + m_z().abs().str());
  }
  if (!(s_target - m_z()).is_integer()) throw InvalidArgument("target spin and m_z differ by a half-integer");
}

SpinSector SpinSector::for_target(int n_electrons, HalfInt s_target) {
  const int diff = s_target.twice();  // n_alpha - n_beta = 2 m_z = 2 S
  if ((n_electrons + diff) % 2 != 0) throw InvalidArgument("target spin incompatible with electron count");
  return {(n_electrons + diff) / 2, (n_electrons - diff) / 2, s_target};
}

PauliSum build_spin_component(Axis axis, std::size_t n_spatial) {
  if (n_spatial == 0) throw InvalidArgument("need at least one spatial orbital");
  const std::size_t n = 2 * n_spatial;
  PauliSum out(n);
  for (std::size_t i = 0; i < n_spatial; ++i) {
    const Qubit a = QubitConvention::alpha(i), b = QubitConvention::beta(i);
    switch (axis) {
      case Axis::Z:
        // (n_alpha - n_beta)/2 with n = (1 - Z)/2
        out += PauliSum::term(n, -0.25, {{a, PauliOp::Z}});
        out += PauliSum::term(n, 0.25, {{b, PauliOp::Z}});
        break;
      case Axis::X:
        out += PauliSum::term(n, 0.25, {{a, PauliOp::X}, {b, PauliOp::X}});
        out += PauliSum::term(n, 0.25, {{a, PauliOp::Y}, {b, PauliOp::Y}});
        break;
      case Axis::Y:
        out += PauliSum::term(n, 0.25, {{a, PauliOp::X}, {b, PauliOp::Y}});
        out += PauliSum::term(n, -0.25, {{a, PauliOp::Y}, {b, PauliOp::X}});
        break;
    }
  }
  return out;
}

PauliSum build_s_squared(std::size_t n_spatial) {
  PauliSum out(2 * n_spatial);
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const PauliSum s = build_spin_component(axis, n_spatial);
    out += multiply(s, s);
  }
  return out;
}

NumberOperators build_number_operators(std::size_t n_spatial) {
  if (n_spatial == 0) throw InvalidArgument("need at least one spatial orbital");
  const std::size_t n = 2 * n_spatial;
  NumberOperators ops{PauliSum(n), PauliSum(n)};
  for (std::size_t i = 0; i < n_spatial; ++i) {
    ops.alpha += PauliSum::identity(n, 0.5) + PauliSum::term(n, -0.5, {{QubitConvention::alpha(i), PauliOp::Z}});
    ops.beta += PauliSum::identity(n, 0.5) + PauliSum::term(n, -0.5, {{QubitConvention::beta(i), PauliOp::Z}});
  }
  return ops;
}

PauliSum build_total_number(std::size_t n_spatial) {
  const NumberOperators ops = build_number_operators(n_spatial);
  return ops.alpha + ops.beta;
}

namespace {

void check_projection(HalfInt s, HalfInt m) {
  if (s.twice() < 0) throw InvalidArgument("negative spin");
  if (m.abs() > s) throw InvalidArgument("|m| = " + m.abs().str() + " exceeds S = " + s.str());
  if (!(s - m).is_integer()) throw InvalidArgument("S - m must be an integer");
}

int index_of(HalfInt s, HalfInt m) { return (s - m).twice() / 2; }

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

}  // namespace

Eigen::MatrixXd wigner_d_matrix_half_pi(HalfInt s) {
  if (s.twice() < 0) throw InvalidArgument("negative spin");
  const int dim = s.twice() + 1;
  const double j = s.value();
  // Basis |S, m>, m = S, S-1, ..., -S.
  Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    const double m = j - k;  // raising |m> -> |m+1> at row k-1
    const double c = std::sqrt(j * (j + 1) - m * (m + 1));
    // S_y = (S+ - S-)/(2i)
    sy(k - 1, k) = Complex(0.0, -0.5 * c);
    sy(k, k - 1) = Complex(0.0, 0.5 * c);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sy);
  const double beta = std::numbers::pi / 2.0;
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k) phases(k) = std::polar(1.0, -beta * eig.eigenvalues()(k));
  const Eigen::MatrixXcd rot = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  return rot.real();
}

double wigner_d_half_pi(HalfInt s, HalfInt m1, HalfInt m2) {
  check_projection(s, m1);
  check_projection(s, m2);
  return wigner_d_matrix_half_pi(s)(index_of(s, m1), index_of(s, m2));
}

double wigner_d_half_pi_closed_form(HalfInt s, HalfInt m1, HalfInt m2) {
  check_projection(s, m1);
  check_projection(s, m2);
  // d^j_{m'm}(beta) = sum_k (-1)^(k-m+m') sqrt((j+m)!(j-m)!(j+m')!(j-m')!)
  //                   / ((j+m-k)! k! (j-k-m')! (k-m+m')!) c^(2j-2k+m-m') s^(2k-m+m')
  const int j2 = s.twice(), mp2 = m1.twice(), m2x = m2.twice();
  const int jpm = (j2 + m2x) / 2, jmm = (j2 - m2x) / 2, jpmp = (j2 + mp2) / 2, jmmp = (j2 - mp2) / 2;
  const int dm = (mp2 - m2x) / 2;  // m' - m
  const double pref = std::sqrt(factorial(jpm) * factorial(jmm) * factorial(jpmp) * factorial(jmmp));
  const double c = std::cos(std::numbers::pi / 4.0), sn = std::sin(std::numbers::pi / 4.0);
  double acc = 0.0;
  for (int k = 0; k <= j2; ++k) {
    if (jpm - k < 0 || jmmp - k < 0 || k + dm < 0) continue;
    const double denom = factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k + dm);
    const double sign = ((k + dm) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * pref / denom * std::pow(c, j2 - 2 * k - dm) * std::pow(sn, 2 * k + dm);
  }
  return acc;
}

double pass_probability(HalfInt s, HalfInt m_z) {
  check_projection(s, m_z);
  const Eigen::MatrixXd d = wigner_d_matrix_half_pi(s);
  const int col = index_of(s, m_z);
  double p = 0.0;
  for (HalfInt mx = s; mx >= -s; mx = mx - HalfInt(1)) {
    if (mx.abs() <= m_z.abs()) {
      const double v = d(index_of(s, mx), col);
      p += v * v;
    }
  }
  return p;
}

}  // namespace sfvqd
