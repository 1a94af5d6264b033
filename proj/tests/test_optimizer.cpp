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

#include "sfvqd/errors.hpp"
#include "sfvqd/optimizer.hpp"

namespace sfvqd {
namespace {

// Anisotropic bowl with its minimum at x_i = i.
double bowl(std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) f += static_cast<double>(i + 1) * std::pow(x[i] - static_cast<double>(i), 2);
  return f;
}

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

class EachOptimizer : public ::testing::TestWithParam<std::string> {};

TEST_P(EachOptimizer, FindsBowlMinimum) {
  OptimizerSpec spec;
  spec.name = GetParam();
  spec.max_evaluations = 40000;
  Rng rng(7);
  const OptimizerResult r = make_optimizer(spec)->minimize(bowl, {1.0, -1.0, 0.5, 2.0}, rng);
  // The simplex stops on value spread, which pins x only to about sqrt(tolerance).
  const double tol = spec.name == "spsa" ? 1e-2 : spec.name == "nelder-mead" ? 1e-4 : 1e-6;
  ASSERT_EQ(r.x.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.x[i], static_cast<double>(i), tol) << spec.name;
  EXPECT_NEAR(r.value, bowl(r.x), 1e-12);
  EXPECT_LE(r.evaluations, spec.max_evaluations);
}

TEST_P(EachOptimizer, RespectsEvaluationBudget) {
  OptimizerSpec spec;
  spec.name = GetParam();
  spec.max_evaluations = 37;
  std::size_t calls = 0;
  Objective f = [&](std::span<const double> x) {
    ++calls;
    return rosenbrock(x);
  };
  Rng rng(1);
  const OptimizerResult r = make_optimizer(spec)->minimize(f, {-1.2, 1.0}, rng);
  EXPECT_LE(calls, 37u);
  EXPECT_EQ(r.evaluations, calls);
}

TEST_P(EachOptimizer, DeterministicForFixedSeed) {
  OptimizerSpec spec;
  spec.name = GetParam();
  spec.max_evaluations = 2000;
  Rng a(99), b(99);
  const OptimizerResult ra = make_optimizer(spec)->minimize(rosenbrock, {-1.2, 1.0}, a);
  const OptimizerResult rb = make_optimizer(spec)->minimize(rosenbrock, {-1.2, 1.0}, b);
  EXPECT_EQ(ra.x, rb.x);
  EXPECT_EQ(ra.value, rb.value);
}

INSTANTIATE_TEST_SUITE_P(All, EachOptimizer, ::testing::Values("bfgs", "nelder-mead", "spsa"));

TEST(Optimizer, BfgsAndSimplexSolveRosenbrock) {
  for (const char* name : {"bfgs", "nelder-mead"}) {
    OptimizerSpec spec;
    spec.name = name;
    Rng rng(3);
    const OptimizerResult r = make_optimizer(spec)->minimize(rosenbrock, {-1.2, 1.0}, rng);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4) << name;
    EXPECT_NEAR(r.x[1], 1.0, 1e-4) << name;
    EXPECT_TRUE(r.converged) << name;
  }
}

TEST(Optimizer, EmptyParameterVector) {
  // Zero parameters: the value at the start is the answer.
  Objective f = [](std::span<const double>) { return 4.25; };
  for (const char* name : {"bfgs", "nelder-mead", "spsa"}) {
    OptimizerSpec spec;
    spec.name = name;
    Rng rng(0);
    const OptimizerResult r = make_optimizer(spec)->minimize(f, {}, rng);
    EXPECT_TRUE(r.x.empty());
    EXPECT_EQ(r.value, 4.25);
  }
}

TEST(Optimizer, UnknownNameRejected) {
  OptimizerSpec spec;
  spec.name = "cobyla";
  EXPECT_THROW(make_optimizer(spec), InvalidArgument);
}

}  // namespace
}  // namespace sfvqd
