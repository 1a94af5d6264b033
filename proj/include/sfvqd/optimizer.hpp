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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sfvqd/rng.hpp"

namespace sfvqd {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct OptimizerSpec {
  /// "bfgs" (central-difference gradients), "nelder-mead", or "spsa".
  std::string name = "bfgs";
  /// Hard cap on objective calls. A budget too small for even one value yields NaN.
  std::size_t max_evaluations = 200000;
  /// Stop when successive values change by less than this.
  double tolerance = 1e-10;
  /// bfgs: stop when the gradient infinity norm drops below this.
  double gradient_tolerance = 1e-6;
  /// bfgs: central-difference step.
  double fd_step = 1e-5;
  /// nelder-mead: initial simplex edge.
  double initial_step = 0.1;
  /// spsa gains a_k = a / (k + 1 + A)^0.602, c_k = c / (k + 1)^0.101.
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  double spsa_stability = 10.0;
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual std::string name() const = 0;
  /// `rng` is only consumed by stochastic methods.
  virtual OptimizerResult minimize(const Objective& f, std::vector<double> x0, Rng& rng) const = 0;
};

class NelderMead final : public Optimizer {
 public:
  explicit NelderMead(OptimizerSpec spec) : spec_(std::move(spec)) {}
  std::string name() const override { return "nelder-mead"; }
  OptimizerResult minimize(const Objective& f, std::vector<double> x0, Rng& rng) const override;

 private:
  OptimizerSpec spec_;
};

/// Quasi-Newton BFGS on central finite differences with a backtracking
/// Armijo line search. Uses only objective values.
class FiniteDifferenceBfgs final : public Optimizer {
 public:
  explicit FiniteDifferenceBfgs(OptimizerSpec spec) : spec_(std::move(spec)) {}
  std::string name() const override { return "bfgs"; }
  OptimizerResult minimize(const Objective& f, std::vector<double> x0, Rng& rng) const override;

 private:
  OptimizerSpec spec_;
};

/// Simultaneous-perturbation stochastic approximation, for shot-noise costs.
class Spsa final : public Optimizer {
 public:
  explicit Spsa(OptimizerSpec spec) : spec_(std::move(spec)) {}
  std::string name() const override { return "spsa"; }
  OptimizerResult minimize(const Objective& f, std::vector<double> x0, Rng& rng) const override;

 private:
  OptimizerSpec spec_;
};

std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& spec);

}  // namespace sfvqd
