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

#include "sfvqd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "sfvqd/errors.hpp"

namespace sfvqd {

namespace {

// Counts evaluations and refuses to exceed the budget.
class BudgetedObjective {
 public:
  BudgetedObjective(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

  bool exhausted() const { return count_ >= budget_; }
  std::size_t remaining() const { return budget_ - std::min(count_, budget_); }
  std::size_t count() const { return count_; }
  double operator()(std::span<const double> x) {
    ++count_;
    return f_(x);
  }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

}  // namespace

OptimizerResult NelderMead::minimize(const Objective& f, std::vector<double> x0, Rng&) const {
  const std::size_t n = x0.size();
  BudgetedObjective obj(f, spec_.max_evaluations);
  OptimizerResult result;
  if (n == 0) {
    result.x = x0;
    result.value = obj(x0);
    result.evaluations = obj.count();
    result.converged = true;
    return result;
  }
  // Dimension-adapted coefficients (Gao & Han).
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 1.0 / (2.0 * dn), delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += spec_.initial_step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = obj(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  while (!obj.exhausted()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<std::vector<double>> s2(n + 1);
      std::vector<double> v2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        v2[i] = values[order[i]];
      }
      simplex = std::move(s2);
      values = std::move(v2);
    }
    ++result.iterations;
    if (std::abs(values[n] - values[0]) <= spec_.tolerance * std::max(1.0, std::abs(values[0]))) {
      result.converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / dn;

    const std::vector<double>& worst = simplex[n];
    point(alpha, trial, worst);
    const double fr = obj(trial);
    if (fr < values[0]) {
      point(alpha * beta, trial2, worst);
      const double fe = obj(trial2);
      if (fe < fr) {
        simplex[n] = trial2;
        values[n] = fe;
      } else {
        simplex[n] = trial;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = trial;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      point(outside ? alpha * gamma : -gamma, trial2, worst);
      const double fc = obj(trial2);
      if (fc < std::min(fr, values[n])) {
        simplex[n] = trial2;
        values[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n && !obj.exhausted(); ++i) {
          for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + delta * (simplex[i][j] - simplex[0][j]);
          values[i] = obj(simplex[i]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = obj.count();
  return result;
}

OptimizerResult FiniteDifferenceBfgs::minimize(const Objective& f, std::vector<double> x0, Rng&) const {
  const auto n = static_cast<Eigen::Index>(x0.size());
  BudgetedObjective obj(f, spec_.max_evaluations);
  OptimizerResult result;
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
  auto eval = [&](const Eigen::VectorXd& p) { return obj(std::span<const double>(p.data(), static_cast<std::size_t>(p.size()))); };
  auto gradient = [&](Eigen::VectorXd p) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double xi = p(i);
      p(i) = xi + spec_.fd_step;
      const double fp = eval(p);
      p(i) = xi - spec_.fd_step;
      const double fm = eval(p);
      p(i) = xi;
      g(i) = (fp - fm) / (2.0 * spec_.fd_step);
    }
    return g;
  };

  const auto grad_cost = static_cast<std::size_t>(2 * n);
  if (obj.exhausted()) {
    result.x = x0;
    result.value = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  double fx = eval(x);
  if (n == 0) {
    result.x = x0;
    result.value = fx;
    result.evaluations = obj.count();
    result.converged = true;
    return result;
  }
  if (obj.remaining() < grad_cost) {
    result.x = x0;
    result.value = fx;
    result.evaluations = obj.count();
    return result;
  }
  Eigen::VectorXd g = gradient(x);
  Eigen::MatrixXd inv_h = Eigen::MatrixXd::Identity(n, n);
  int stalls = 0;
  while (!obj.exhausted()) {
    ++result.iterations;
    if (g.lpNorm<Eigen::Infinity>() < spec_.gradient_tolerance) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd dir = -inv_h * g;
    double slope = g.dot(dir);
    if (slope >= 0.0) {
      inv_h.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < 40 && !obj.exhausted(); ++ls) {
      x_new = x + step * dir;
      f_new = eval(x_new);
      if (f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (inv_h.isIdentity()) break;
      inv_h.setIdentity();
      continue;
    }
    const double decrease = fx - f_new;
    if (obj.remaining() < grad_cost) {
      // No budget left for another gradient; keep the improved point.
      x = x_new;
      fx = f_new;
      break;
    }
    Eigen::VectorXd g_new = gradient(x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = inv_h * y;
      inv_h += ((sy + y.dot(hy)) * rho * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
    x = x_new;
    fx = f_new;
    g = g_new;
    stalls = (decrease <= spec_.tolerance * std::max(1.0, std::abs(fx))) ? stalls + 1 : 0;
    if (stalls >= 3) {
      result.converged = true;
      break;
    }
  }
  result.x.assign(x.data(), x.data() + n);
  result.value = fx;
  result.evaluations = obj.count();
  return result;
}

OptimizerResult Spsa::minimize(const Objective& f, std::vector<double> x0, Rng& rng) const {
  const std::size_t n = x0.size();
  BudgetedObjective obj(f, spec_.max_evaluations);
  OptimizerResult result;
  std::vector<double> x = std::move(x0), xp(n), xm(n), delta(n);
  // Two evaluations per step, one reserved for the final value.
  for (std::size_t k = 0; obj.count() + 3 <= spec_.max_evaluations; ++k) {
    const double ak = spec_.spsa_a / std::pow(static_cast<double>(k) + 1.0 + spec_.spsa_stability, 0.602);
    const double ck = spec_.spsa_c / std::pow(static_cast<double>(k) + 1.0, 0.101);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = (rng.next() & 1) ? 1.0 : -1.0;
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double diff = obj(xp) - obj(xm);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * diff / (2.0 * ck * delta[i]);
    ++result.iterations;
  }
  result.x = x;
  result.value = obj.exhausted() ? std::numeric_limits<double>::quiet_NaN() : obj(x);
  result.evaluations = obj.count();
  // SPSA has no convergence test; it always spends its budget.
  result.converged = true;
  return result;
}

std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& spec) {
  if (spec.name == "bfgs") return std::make_unique<FiniteDifferenceBfgs>(spec);
  if (spec.name == "nelder-mead") return std::make_unique<NelderMead>(spec);
  if (spec.name == "spsa") return std::make_unique<Spsa>(spec);
  throw InvalidArgument("unknown optimizer '" + spec.name + "'");
}

}  // namespace sfvqd
