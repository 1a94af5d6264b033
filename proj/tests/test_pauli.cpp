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

#include <cmath>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "sfvqd/errors.hpp"
#include "sfvqd/hamio.hpp"
#include "sfvqd/pauli.hpp"

namespace sfvqd {
namespace {

const std::string kFixtures = SFVQD_FIXTURE_DIR;

StateVector random_state(std::size_t n, Rng& rng) {
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0;
  for (auto& x : a) {
    x = {rng.normal(), rng.normal()};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector(n, std::move(a));
}

PauliSum random_sum(std::size_t n, std::size_t terms, Rng& rng) {
  const std::string letters = "IXYZ";
  PauliSum s(n);
  for (std::size_t t = 0; t < terms; ++t) {
    std::string w;
    for (std::size_t q = 0; q < n; ++q) w += letters[rng.next() % 4];
    s.add(rng.normal(), w);
  }
  return s.canonicalize();
}

Eigen::MatrixXcd oracle_dense(const PauliSum& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << s.n_qubits(), Eigen::Index{1} << s.n_qubits());
  for (const PauliTerm& t : s.terms()) m += t.coefficient * oracle::word(t.word);
  return m;
}

TEST(Pauli, SingleQubitExpectations) {
  EXPECT_DOUBLE_EQ(expectation(StateVector(1), PauliSum::term(1, 1.0, {{0, PauliOp::Z}})), 1.0);
  StateVector plus(1);
  plus.apply(gates::h(0));
  EXPECT_NEAR(expectation(plus, PauliSum::term(1, 1.0, {{0, PauliOp::X}})), 1.0, 1e-15);
}

TEST(Pauli, ExpectationMatchesDenseQuadraticForm) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum s = random_sum(4, 12, rng);
    const StateVector psi = random_state(4, rng);
    const Eigen::VectorXcd v = psi.to_eigen();
    const double expect = (v.adjoint() * oracle_dense(s) * v)(0).real();
    EXPECT_NEAR(expectation(psi, s), expect, 1e-10);
    EXPECT_NEAR(expectation(psi, CompiledOperator(s)), expect, 1e-10);
  }
}

TEST(Pauli, WidthMismatchIsRejected) {
  EXPECT_THROW(expectation(StateVector(2), PauliSum::identity(3)), InvalidArgument);
  EXPECT_THROW(apply_sum(StateVector(2), PauliSum::identity(3)), InvalidArgument);
  PauliSum s(2);
  EXPECT_THROW(s.add(1.0, "XYZ"), InvalidArgument);
}

TEST(Pauli, OneNormExamples) {
  PauliSum s(2);
  s.add(0.5, "ZI");
  s.add(-0.3, "XX");
  EXPECT_NEAR(one_norm(s.canonicalize()), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(one_norm(PauliSum::identity(1)), 1.0);
}

TEST(Pauli, OneNormBoundsSpectrumOnFixtures) {
  for (const char* f : {"lih_bond_l+0.000.json", "beh2_sym-stretch_l+0.000.json"}) {
    const PauliSum h = load(kFixtures + "/" + f).hamiltonian();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle_dense(h), Eigen::EigenvaluesOnly);
    const double spec = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
    EXPECT_GE(one_norm(h), spec) << f;
  }
  Rng rng(22);
  for (int i = 0; i < 10; ++i) {
    const PauliSum s = random_sum(3, 8, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle_dense(s), Eigen::EigenvaluesOnly);
    EXPECT_GE(one_norm(s) + 1e-12, es.eigenvalues().cwiseAbs().maxCoeff());
  }
}

TEST(Pauli, DenseExamples) {
  Eigen::MatrixXcd z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  EXPECT_EQ(to_dense(PauliSum::term(1, 1.0, {{0, PauliOp::Z}})), z);
  EXPECT_EQ(to_dense(PauliSum::term(1, 1.0, {{0, PauliOp::X}})), x);
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const PauliSum s = random_sum(4, 10, rng);
    const Eigen::MatrixXcd m = to_dense(s);
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m - oracle_dense(s)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(to_dense(PauliSum::identity(15)), ResourceLimit);
}

TEST(Pauli, ApplySumExamples) {
  const StateVector zero(1);
  const StateVector z = apply_sum(zero, PauliSum::term(1, 1.0, {{0, PauliOp::Z}}));
  EXPECT_EQ(z[0], Complex(1));
  const StateVector x = apply_sum(zero, PauliSum::term(1, 1.0, {{0, PauliOp::X}}));
  EXPECT_EQ(x[1], Complex(1));
  Rng rng(24);
  for (int i = 0; i < 10; ++i) {
    const PauliSum s = random_sum(4, 10, rng);
    const StateVector psi = random_state(4, rng);
    const StateVector out = apply_sum(psi, s);
    EXPECT_LT((out.to_eigen() - oracle_dense(s) * psi.to_eigen()).norm(), 1e-10);
    EXPECT_NEAR(inner_product(psi, out).real(), expectation(psi, s), 1e-10);
  }
}

TEST(Pauli, CanonicalizationMergesAndIsIdempotent) {
  PauliSum s(2);
  s.add(0.25, "XZ");
  s.add(0.5, "IZ");
  s.add(0.75, "XZ");
  s.add(1e-14, "YY");
  s.add(0.1, "ZZ");
  s.add(-0.1, "ZZ");
  Rng rng(25);
  const StateVector psi = random_state(2, rng);
  const double before = expectation(psi, s);
  s.canonicalize();
  EXPECT_TRUE(s.is_canonical());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.terms()[0].word, "IZ");
  EXPECT_EQ(s.terms()[1].word, "XZ");
  EXPECT_DOUBLE_EQ(s.terms()[1].coefficient, 1.0);
  EXPECT_NEAR(expectation(psi, s), before, 1e-10);
  PauliSum again = s;
  again.canonicalize();
  ASSERT_EQ(again.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(again.terms()[i].word, s.terms()[i].word);
}

TEST(Pauli, ExpectationIsAdditive) {
  Rng rng(26);
  for (int i = 0; i < 10; ++i) {
    const PauliSum a = random_sum(3, 6, rng), b = random_sum(3, 6, rng);
    const StateVector psi = random_state(3, rng);
    EXPECT_NEAR(expectation(psi, a + b), expectation(psi, a) + expectation(psi, b), 1e-10);
  }
}

TEST(Pauli, MultiplyMatchesDenseProduct) {
  Rng rng(27);
  for (int i = 0; i < 10; ++i) {
    const PauliSum a = random_sum(3, 5, rng);
    const PauliSum sq = multiply(a, a);
    const Eigen::MatrixXcd d = oracle_dense(a);
    EXPECT_LT((to_dense(sq) - d * d).cwiseAbs().maxCoeff(), 1e-10);
  }
  // XY = iZ is anti-Hermitian and must be refused.
  EXPECT_THROW(multiply(PauliSum::term(1, 1.0, {{0, PauliOp::X}}), PauliSum::term(1, 1.0, {{0, PauliOp::Y}})),
               InvalidArgument);
}

}  // namespace
}  // namespace sfvqd
