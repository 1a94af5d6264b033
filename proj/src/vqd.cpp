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

#include "sfvqd/vqd.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "sfvqd/errors.hpp"
#include "sfvqd/kernels.hpp"

namespace sfvqd {

namespace {

struct TermMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int ny = 0;
};

TermMasks masks_of(const std::string& word) {
  TermMasks m;
  const std::size_t n = word.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << bit_position(n, q);
    switch (pauli_from_char(word[q])) {
      case PauliOp::X: m.x |= bit; break;
      case PauliOp::Y: m.x |= bit; m.z |= bit; ++m.ny; break;
      case PauliOp::Z: m.z |= bit; break;
      case PauliOp::I: break;
    }
  }
  return m;
}

// <v|P|v> for a single Pauli word on an unnormalized vector.
double word_expectation(const TermMasks& m, std::span<const Complex> v) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = kIPow[m.ny & 3];
  Complex acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sign = (std::popcount(i & m.z) & 1) ? -1.0 : 1.0;
    acc += std::conj(v[i ^ m.x]) * v[i] * sign;
  }
  return (phase * acc).real();
}

AnsatzKind ansatz_for(Method method) { return method == Method::VqdSp ? AnsatzKind::SP : AnsatzKind::SSP; }

std::vector<Complex> block_of(const StateVector& composite, std::size_t n_anc, std::size_t u) {
  const std::size_t sys_dim = composite.dim() >> n_anc;
  std::vector<Complex> b(sys_dim);
  for (std::size_t i = 0; i < sys_dim; ++i) b[i] = composite[(i << n_anc) | u];
  return b;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::VqdSp: return "VQD/SP";
    case Method::VqdSsp: return "VQD/SSP";
    case Method::SfVqdSsp: return "sfVQD/SSP";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "VQD/SP") return Method::VqdSp;
  if (name == "VQD/SSP") return Method::VqdSsp;
  if (name == "sfVQD/SSP") return Method::SfVqdSsp;
  throw InvalidArgument("unknown method '" + name + "'");
}

std::string to_string(CostMode mode) { return mode == CostMode::Shot ? "shot" : "statevector"; }

CostMode cost_mode_from_string(const std::string& name) {
  if (name == "statevector") return CostMode::Statevector;
  if (name == "shot") return CostMode::Shot;
  throw InvalidArgument("unknown cost mode '" + name + "'");
}

void VqdConfig::validate(std::size_t n_spatial) const {
  if (layers < 1) throw InvalidArgument("layers must be at least 1");
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (n_states < 1) throw InvalidArgument("n_states must be at least 1");
  if (mode == CostMode::Shot && n_shot < 1) throw InvalidArgument("n_shot must be at least 1 in shot mode");
  if (!(c_penalty < 1.0)) throw InvalidPenalty("c_penalty must be below 1");
  sector.validate(n_spatial);
}

void DeflationStack::push(StateVector state, double weight) {
  if (!states.empty() && state.n_qubits() != states.front().n_qubits()) {
    throw InvalidArgument("deflation states must share a register width");
  }
  states.push_back(std::move(state));
  weights.push_back(weight);
}

CostEvaluator::CostEvaluator(const PauliSum& hamiltonian, const VqdConfig& config, std::size_t n_spatial)
    : hamiltonian_(hamiltonian),
      compiled_(std::make_shared<const CompiledOperator>(hamiltonian)),
      config_(config),
      n_spatial_(n_spatial),
      ansatz_{ansatz_for(config.method), n_spatial, config.layers},
      reference_(reference_state(n_spatial, config.sector)) {
  if (hamiltonian.n_qubits() != 2 * n_spatial) throw InvalidArgument("Hamiltonian width does not match orbitals");
  if (config.method == Method::SfVqdSsp) {
    n_anc_ = required_ancillas(n_spatial, static_cast<std::size_t>(config.sector.n_electrons()));
    screen_.emplace(build_screen_circuit(n_spatial, n_anc_, Axis::X));
    h_ext_.emplace(hamiltonian, config.sector, n_anc_, config.c_penalty);
  }
}

StateVector CostEvaluator::system_state(std::span<const double> params) const {
  if (params.size() != ansatz_.n_params()) throw InvalidArgument("parameter count does not match ansatz");
  return ansatz_.prepare(params, reference_);
}

StateVector CostEvaluator::screened_state(const StateVector& system) const {
  if (!screen_) throw InvalidArgument("method has no screen");
  StateVector s = system.with_ancillas(n_anc_);
  s.apply(*screen_);
  return s;
}

double CostEvaluator::penalty(const StateVector& system, const StateVector* screened, const DeflationStack& stack,
                              std::size_t* overlap_checks) const {
  double total = 0.0;
  for (std::size_t j = 0; j < stack.size(); ++j) {
    const StateVector& ref = stack.states[j];
    if (ref.n_qubits() != system.n_qubits()) throw InvalidArgument("deflation state width mismatch");
    double ov = 0.0;
    if (screened == nullptr) {
      ov = std::norm(inner_product(ref, system));
    } else {
      // <Psi|(|psi_j><psi_j| ⊗ I)|Psi>
      for (std::size_t u = 0; u < (std::size_t{1} << n_anc_); ++u) {
        const std::vector<Complex> b = block_of(*screened, n_anc_, u);
        ov += std::norm(kernels::inner_product(ref.amplitudes(), b));
      }
    }
    total += stack.weights[j] * ov;
  }
  if (overlap_checks) *overlap_checks += stack.size();
  return total;
}

double CostEvaluator::statevector(std::span<const double> params, const DeflationStack& stack,
                                  std::size_t* overlap_checks) const {
  return statevector_of(system_state(params), stack, overlap_checks);
}

double CostEvaluator::statevector_of(const StateVector& system, const DeflationStack& stack,
                                     std::size_t* overlap_checks) const {
  if (system.n_qubits() != 2 * n_spatial_) throw InvalidArgument("system state width does not match orbitals");
  if (!screen_) return expectation(system, *compiled_) + penalty(system, nullptr, stack, overlap_checks);
  const StateVector composite = screened_state(system);
  const StateVector* post = config_.overlap_mode == OverlapMode::PostScreen ? &composite : nullptr;
  return h_ext_->expectation(composite) + penalty(system, post, stack, overlap_checks);
}

CostEvaluator::ShotOutcome CostEvaluator::shot(std::span<const double> params, const DeflationStack& stack,
                                               std::size_t n_shot, Rng& rng) const {
  return shot_of(system_state(params), stack, n_shot, rng);
}

CostEvaluator::ShotOutcome CostEvaluator::shot_of(const StateVector& system, const DeflationStack& stack,
                                                  std::size_t n_shot, Rng& rng) const {
  if (system.n_qubits() != 2 * n_spatial_) throw InvalidArgument("system state width does not match orbitals");
  ShotOutcome out;
  const auto& terms = hamiltonian_.terms();

  if (!screen_) {
    // Unscreened baseline: plain per-term sampling.
    for (const PauliTerm& t : terms) {
      const double e = word_expectation(masks_of(t.word), system.amplitudes());
      double sum = 0.0;
      for (std::size_t i = 0; i < n_shot; ++i) sum += rng.uniform() < 0.5 * (1.0 + e) ? 1.0 : -1.0;
      out.value += t.coefficient * sum / static_cast<double>(n_shot);
    }
    out.value += penalty(system, nullptr, stack, &out.overlap_checks);
    return out;
  }

  const StateVector composite = screened_state(system);
  const std::size_t n_blocks = std::size_t{1} << n_anc_;
  std::vector<std::vector<Complex>> blocks(n_blocks);
  std::vector<double> cumulative(n_blocks);
  double acc = 0.0;
  for (std::size_t u = 0; u < n_blocks; ++u) {
    blocks[u] = block_of(composite, n_anc_, u);
    acc += kernels::norm_squared(blocks[u]);
    cumulative[u] = acc;
  }
  // Same valid set as H_ext.
  auto passes = [&](std::size_t u) { return h_ext_->valid(decode_mx(u, n_anc_)); };

  for (const PauliTerm& t : terms) {
    const TermMasks m = masks_of(t.word);
    std::vector<double> cache(n_blocks, std::numeric_limits<double>::quiet_NaN());
    double sum = 0.0;
    for (std::size_t i = 0; i < n_shot; ++i) {
      const double r = rng.uniform() * acc;
      const auto u = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r) -
                                              cumulative.begin());
      const std::size_t uu = std::min(u, n_blocks - 1);
      ++out.ancilla_measurements;
      if (!passes(uu)) {
        out.aborted = true;
        break;
      }
      if (std::isnan(cache[uu])) {
        const double p = cumulative[uu] - (uu ? cumulative[uu - 1] : 0.0);
        cache[uu] = word_expectation(m, blocks[uu]) / p;
      }
      sum += rng.uniform() < 0.5 * (1.0 + cache[uu]) ? 1.0 : -1.0;
    }
    if (out.aborted) break;
    out.value += t.coefficient * sum / static_cast<double>(n_shot);
  }
  if (out.aborted) out.value = h_ext_->norm_bound();
  const StateVector* post = config_.overlap_mode == OverlapMode::PostScreen ? &composite : nullptr;
  out.value += penalty(system, post, stack, &out.overlap_checks);
  return out;
}

double cost_statevector(std::span<const double> params, const CostEvaluator& evaluator, const DeflationStack& stack) {
  return evaluator.statevector(params, stack);
}

CostEvaluator::ShotOutcome cost_shot(std::span<const double> params, const CostEvaluator& evaluator,
                                     const DeflationStack& stack, std::size_t n_shot, Rng& rng) {
  return evaluator.shot(params, stack, n_shot, rng);
}

double s_squared_diagnostic(const StateVector& state) {
  if (state.n_qubits() % 2 != 0) throw InvalidArgument("system register must hold whole spatial orbitals");
  return expectation(state, build_s_squared(state.n_qubits() / 2));
}

bool VqdResult::all_converged() const {
  return std::all_of(states.begin(), states.end(), [](const StateResult& s) { return s.converged; });
}

StateResult optimize_state(std::size_t k, const VqdConfig& config, const PauliSum& hamiltonian, std::size_t n_spatial,
                           const DeflationStack& stack) {
  const auto t0 = std::chrono::steady_clock::now();
  config.sector.validate(n_spatial);
  if (config.restarts < 1) throw InvalidArgument("restarts must be at least 1");
  const CostEvaluator ev(hamiltonian, config, n_spatial);

  struct Run {
    OptimizerResult opt;
    std::size_t checks = 0;
  };
  std::vector<Run> runs(config.restarts);
  std::exception_ptr failure;
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t r = 0; r < config.restarts; ++r) {
    try {
      Rng rng = Rng::derive(config.seed, {k, r});
      std::vector<double> x0 =
          init_params(ev.ansatz().kind, n_spatial, config.layers, rng, config.init_stddev).flatten();
      Rng shot_rng = Rng::derive(config.seed, {k, r, 1});
      std::size_t checks = 0;
      Objective f;
      if (config.mode == CostMode::Statevector) {
        f = [&](std::span<const double> x) { return ev.statevector(x, stack, &checks); };
      } else {
        f = [&](std::span<const double> x) {
          const auto o = ev.shot(x, stack, config.n_shot, shot_rng);
          checks += o.overlap_checks;
          return o.value;
        };
      }
      runs[r].opt = make_optimizer(config.optimizer)->minimize(f, std::move(x0), rng);
      runs[r].checks = checks;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  StateResult res;
  res.index = k;
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    res.restart_costs.push_back(runs[r].opt.value);
    res.overlap_checks += runs[r].checks;
    res.evaluations += runs[r].opt.evaluations;
    if (runs[r].opt.value < runs[best].opt.value) best = r;
  }
  res.selected_restart = best;
  res.params = runs[best].opt.x;
  res.cost = runs[best].opt.value;
  res.converged = runs[best].opt.converged;
  res.state = ev.system_state(res.params);
  res.energy = expectation(res.state, ev.compiled());
  res.s_squared = s_squared_diagnostic(res.state);
  for (const StateVector& s : stack.states) res.max_overlap = std::max(res.max_overlap, std::abs(inner_product(s, res.state)));
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

VqdResult run_deflation(const VqdConfig& config, const PauliSum& hamiltonian, std::size_t n_spatial) {
  config.validate(n_spatial);
  VqdResult result;
  DeflationStack stack;
  std::size_t cumulative = 0;
  for (std::size_t k = 0; k < config.n_states; ++k) {
    StateResult s = optimize_state(k, config, hamiltonian, n_spatial, stack);
    cumulative += s.overlap_checks;
    s.cumulative_overlap_checks = cumulative;
    if (k == 0) result.penalty_weight = std::abs(s.energy);
    if (!s.converged) result.flags.push_back("state " + std::to_string(k) + ": optimizer did not converge");
    if (k > 0 && s.energy < result.states.back().energy - 1e-6) {
      result.monotone = false;
      result.flags.push_back("state " + std::to_string(k) + ": energy below previous state");
    }
    if (s.max_overlap > config.orthogonality_tolerance) {
      result.orthogonal = false;
      result.flags.push_back("state " + std::to_string(k) + ": overlap with earlier state above tolerance");
    }
    stack.push(s.state, result.penalty_weight);
    result.states.push_back(std::move(s));
  }
  return result;
}

}  // namespace sfvqd
