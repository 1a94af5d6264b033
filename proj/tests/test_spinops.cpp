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

#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "sfvqd/errors.hpp"
#include "sfvqd/hamio.hpp"
#include "sfvqd/spinops.hpp"

namespace sfvqd {
namespace {

const std::string kFixtures = SFVQD_FIXTURE_DIR;

double max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(SpinOps, ComponentsMatchOnSiteSpinOracle) {
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_LT(max_dev(to_dense(build_spin_component(Axis::X, n)), oracle::s_x(n)), 1e-12);
    EXPECT_LT(max_dev(to_dense(build_spin_component(Axis::Y, n)), oracle::s_y(n)), 1e-12);
    EXPECT_LT(max_dev(to_dense(build_spin_component(Axis::Z, n)), oracle::s_z(n)), 1e-12);
    EXPECT_LT(max_dev(to_dense(build_s_squared(n)), oracle::s_squared(n)), 1e-12);
  }
}

TEST(SpinOps, SzSingleOrbitalEigenvalues) {
  const Eigen::MatrixXcd sz = to_dense(build_spin_component(Axis::Z, 1));
  // |00>, |01> (beta), |10> (alpha), |11>
  EXPECT_NEAR(sz(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(sz(1, 1).real(), -0.5, 1e-15);
  EXPECT_NEAR(sz(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(sz(3, 3).real(), 0.0, 1e-15);
  EXPECT_LT((sz - Eigen::MatrixXcd(sz.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpinOps, CommutationRelations) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Eigen::MatrixXcd x = to_dense(build_spin_component(Axis::X, n));
    const Eigen::MatrixXcd y = to_dense(build_spin_component(Axis::Y, n));
    const Eigen::MatrixXcd z = to_dense(build_spin_component(Axis::Z, n));
    const Complex i(0, 1);
    EXPECT_LT(max_dev(x * y - y * x, i * z), 1e-11);
    EXPECT_LT(max_dev(y * z - z * y, i * x), 1e-11);
    EXPECT_LT(max_dev(z * x - x * z, i * y), 1e-11);
  }
}

TEST(SpinOps, SzOnPairedOccupationIsZero) {
  EXPECT_NEAR(expectation(init_basis_state(4, "1100"), build_spin_component(Axis::Z, 2)), 0.0, 1e-15);
}

TEST(SpinOps, SSquaredSpectrum) {
  // One orbital: empty and doubly occupied are singlets, the two singly
  // occupied states form a doublet (S(S+1) = 3/4).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> one(to_dense(build_s_squared(1)), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(oracle::s_squared(1), Eigen::EigenvaluesOnly);
  EXPECT_NEAR(one.eigenvalues()(0), 0, 1e-12);
  EXPECT_NEAR(one.eigenvalues()(1), 0, 1e-12);
  EXPECT_NEAR(one.eigenvalues()(2), 0.75, 1e-12);
  EXPECT_NEAR(one.eigenvalues()(3), 0.75, 1e-12);
  EXPECT_LT((one.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  for (std::size_t n = 2; n <= 4; ++n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(build_s_squared(n)), Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double v = es.eigenvalues()(k);
      const double s = 0.5 * (-1 + std::sqrt(1 + 4 * std::max(0.0, v)));
      EXPECT_NEAR(2 * s, std::round(2 * s), 1e-9);
      EXPECT_NEAR(v, s * (s + 1), 1e-9);
    }
  }
}

TEST(SpinOps, SingletAndTripletOfTwoOrbitals) {
  // Orbital 0 alpha with orbital 1 beta, and the swap: qubits (0,3) vs (1,2).
  const PauliSum s2 = build_s_squared(2);
  const std::size_t a = basis_index("1001"), b = basis_index("0110");
  std::vector<Complex> sing(16), trip(16);
  sing[a] = 1 / std::sqrt(2.0);
  trip[a] = 1 / std::sqrt(2.0);
  // |0a 1b> - |0b 1a>: both orderings put the orbital-0 operator first,
  // so the antisymmetric spin combination carries a relative plus sign.
  sing[b] = 1 / std::sqrt(2.0);
  trip[b] = -1 / std::sqrt(2.0);
  const double e_sing = expectation(StateVector(4, sing), s2);
  const double e_trip = expectation(StateVector(4, trip), s2);
  EXPECT_NEAR(std::min(e_sing, e_trip), 0.0, 1e-12);
  EXPECT_NEAR(std::max(e_sing, e_trip), 2.0, 1e-12);
}

TEST(SpinOps, NumberOperatorExamples) {
  const auto one = build_number_operators(1);
  EXPECT_NEAR(expectation(init_basis_state(2, "10"), one.alpha), 1, 1e-15);
  EXPECT_NEAR(expectation(init_basis_state(2, "10"), one.beta), 0, 1e-15);
  EXPECT_NEAR(expectation(init_basis_state(2, "11"), one.beta), 1, 1e-15);
  const auto three = build_number_operators(3);
  EXPECT_NEAR(expectation(init_basis_state(6, "110000"), three.alpha), 1, 1e-15);
  EXPECT_NEAR(expectation(init_basis_state(6, "110000"), three.beta), 1, 1e-15);
  EXPECT_LT(max_dev(to_dense(three.alpha), oracle::number_alpha(3)), 1e-15);
  EXPECT_LT(max_dev(to_dense(three.beta), oracle::number_beta(3)), 1e-15);
}

TEST(SpinOps, FixtureHamiltoniansCommuteWithSx) {
  for (const char* f : {"lih_bond_l+0.000.json", "lih_bond_l+1.000.json", "beh2_sym-stretch_l+0.500.json",
                        "beh2_antisym-stretch_l+1.000.json"}) {
    const HamiltonianRecord r = load(kFixtures + "/" + f);
    const Eigen::MatrixXcd h = to_dense(r.hamiltonian());
    const Eigen::MatrixXcd sx = oracle::s_x(r.n_spatial);
    EXPECT_LT((h * sx - sx * h).cwiseAbs().maxCoeff(), 1e-8) << f;
  }
}

TEST(Wigner, ExampleValues) {
  EXPECT_NEAR(wigner_d_half_pi(HalfInt(1), HalfInt(0), HalfInt(0)), 0.0, 1e-12);
  EXPECT_NEAR(wigner_d_half_pi(HalfInt(2), HalfInt(0), HalfInt(0)), -0.5, 1e-12);
  EXPECT_THROW(wigner_d_half_pi(HalfInt(1), HalfInt(2), HalfInt(0)), InvalidArgument);
}

TEST(Wigner, TwoEvaluationsAndFactorialOracleAgree) {
  for (int twice = 0; twice <= 10; ++twice) {
    const HalfInt s = HalfInt::from_twice(twice);
    for (int a = -twice; a <= twice; a += 2)
      for (int b = -twice; b <= twice; b += 2) {
        const HalfInt m1 = HalfInt::from_twice(a), m2 = HalfInt::from_twice(b);
        EXPECT_NEAR(wigner_d_half_pi(s, m1, m2), wigner_d_half_pi_closed_form(s, m1, m2), 1e-10);
        if (twice % 2 == 0) {
          EXPECT_NEAR(wigner_d_half_pi(s, m1, m2), oracle::wigner_d_half_pi(twice / 2, a / 2, b / 2), 1e-10);
        }
      }
  }
}

TEST(Wigner, ColumnsAreNormalized) {
  for (int twice = 0; twice <= 10; ++twice) {
    const HalfInt s = HalfInt::from_twice(twice);
    for (int b = -twice; b <= twice; b += 2) {
      double sum = 0;
      for (int a = -twice; a <= twice; a += 2) sum += std::pow(wigner_d_half_pi(s, HalfInt::from_twice(a), HalfInt::from_twice(b)), 2);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

// Expected values: exact fractions from Sum_{|m_x|<=m_z} d^S_{m_x m_z}(pi/2)^2,
// computed with the factorial-sum oracle above and with sympy's Wigner d.
TEST(PassProbability, ExactWignerValues) {
  struct Cell {
    int s, m;
    double p;
  };
  const Cell cells[] = {{0, 0, 1.0},          {1, 0, 0.0},         {1, 1, 1.0},          {2, 0, 1.0 / 4},
                        {2, 1, 1.0 / 2},      {2, 2, 1.0},         {3, 0, 0.0},          {3, 1, 7.0 / 32},
                        {3, 2, 13.0 / 16},    {3, 3, 1.0},         {4, 0, 9.0 / 64},     {4, 1, 9.0 / 32},
                        {4, 2, 11.0 / 32},    {4, 3, 15.0 / 16},   {5, 0, 0.0},          {5, 1, 1.0 / 8},
                        {5, 2, 11.0 / 32},    {5, 3, 305.0 / 512}};
  const auto t0 = std::chrono::steady_clock::now();
  for (const Cell& c : cells) {
    EXPECT_NEAR(pass_probability(HalfInt(c.s), HalfInt(c.m)), c.p, 1e-9) << "S=" << c.s << " m_z=" << c.m;
    double oracle_sum = 0;
    for (int mx = -c.m; mx <= c.m; ++mx) oracle_sum += std::pow(oracle::wigner_d_half_pi(c.s, mx, c.m), 2);
    EXPECT_NEAR(oracle_sum, c.p, 1e-12);
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}

TEST(PassProbability, DiagonalIsOneAndInvalidRejected) {
  for (int s = 0; s <= 5; ++s) EXPECT_NEAR(pass_probability(HalfInt(s), HalfInt(s)), 1.0, 1e-12);
  EXPECT_THROW(pass_probability(HalfInt(1), HalfInt(2)), InvalidArgument);
}

TEST(SpinSector, Validation) {
  EXPECT_NO_THROW((SpinSector{1, 1, HalfInt(0)}.validate(3)));
  EXPECT_THROW((SpinSector{4, 0, HalfInt(2)}.validate(3)), InvalidArgument);
  EXPECT_THROW((SpinSector{2, 0, HalfInt(0)}.validate(3)), InvalidArgument);  // S < |m_z|
  EXPECT_THROW((SpinSector{1, 0, HalfInt::from_twice(1)}.validate(3)), UnsupportedSector);
  const SpinSector t = SpinSector::for_target(4, HalfInt(1));
  EXPECT_EQ(t.n_alpha, 3);
  EXPECT_EQ(t.n_beta, 1);
}

}  // namespace
}  // namespace sfvqd
