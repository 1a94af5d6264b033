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

#include <compare>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "sfvqd/pauli.hpp"

namespace sfvqd {

/// Integer or half-integer quantum number, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int value) : twice_(2 * value) {}
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

/// Electron counts per spin plus the total spin being targeted.
struct SpinSector {
  int n_alpha = 0;
  int n_beta = 0;
  HalfInt s_target;

  HalfInt m_z() const { return HalfInt::from_twice(n_alpha - n_beta); }
  int n_electrons() const { return n_alpha + n_beta; }

  /// Throws InvalidArgument for infeasible counts or S_target < |m_z|, and
  /// UnsupportedSector for odd electron counts.
  void validate(std::size_t n_spatial) const;

  /// Sector whose reference state has m_z = S, the highest projection of the
  /// target multiplet.
  static SpinSector for_target(int n_electrons, HalfInt s_target);
};

enum class Axis { X, Y, Z };

/// Total spin component along `axis` over 2·n_spatial interleaved spin orbitals.
PauliSum build_spin_component(Axis axis, std::size_t n_spatial);
PauliSum build_s_squared(std::size_t n_spatial);

struct NumberOperators {
  PauliSum alpha;
  PauliSum beta;
};
NumberOperators build_number_operators(std::size_t n_spatial);
PauliSum build_total_number(std::size_t n_spatial);

/// d^S_{m1,m2}(pi/2) = <S,m1| exp(-i pi/2 S_y) |S,m2>, evaluated by
/// exponentiating the (2S+1)-dimensional S_y matrix.
double wigner_d_half_pi(HalfInt s, HalfInt m1, HalfInt m2);

/// Same quantity from the explicit factorial sum.
double wigner_d_half_pi_closed_form(HalfInt s, HalfInt m1, HalfInt m2);

/// Full (2S+1)x(2S+1) table; row/column k corresponds to m = S - k.
Eigen::MatrixXd wigner_d_matrix_half_pi(HalfInt s);

/// Probability that an S_x readout satisfies |m_x| <= |m_z| for |S, m_z>.
double pass_probability(HalfInt s, HalfInt m_z);

}  // namespace sfvqd
