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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfvqd/ansatz.hpp"
#include "sfvqd/optimizer.hpp"
#include "sfvqd/pauli.hpp"
#include "sfvqd/rng.hpp"
#include "sfvqd/screen.hpp"
#include "sfvqd/spinops.hpp"
#include "sfvqd/statevector.hpp"

namespace sfvqd {

enum class Method { VqdSp, VqdSsp, SfVqdSsp };
enum class CostMode { Statevector, Shot };
/// Where deflation overlaps are taken: on the ansatz output, or on the
/// system-register reduction of the screened state.
enum class OverlapMode { PreScreen, PostScreen };

std::string to_string(Method method);
Method method_from_string(const std::string& name);
std::string to_string(CostMode mode);
CostMode cost_mode_from_string(const std::string& name);

struct VqdConfig {
  Method method = Method::SfVqdSsp;
  std::size_t layers = 6;
  std::size_t restarts = 10;
  std::size_t n_states = 1;
  SpinSector sector;
  CostMode mode = CostMode::Statevector;
  std::size_t n_shot = 1000;
  double c_penalty = 0.0;
  OptimizerSpec optimizer;
  std::uint64_t seed = 0;
  OverlapMode overlap_mode = OverlapMode::PreScreen;
  double orthogonality_tolerance = 1e-2;
  double init_stddev = 0.3;
  /// 0 uses the OpenMP default.
  int threads = 0;

  void validate(std::size_t n_spatial) const;
};

struct DeflationStack {
  std::vector<StateVector> states;
  std::vector<double> weights;

  std::size_t size() const { return states.size(); }
  bool empty() const { return states.empty(); }
  void push(StateVector state, double weight);
};

/// Everything needed to evaluate one deflation cost, prebuilt once.
class CostEvaluator {
 public:
  CostEvaluator(const PauliSum& hamiltonian, const VqdConfig& config, std::size_t n_spatial);

  const AnsatzSpec& ansatz() const { return ansatz_; }
  const StateVector& reference() const { return reference_; }
  bool screened() const { return screen_.has_value(); }
  std::size_t n_anc() const { return n_anc_; }
  const PauliSum& hamiltonian() const { return hamiltonian_; }
  const CompiledOperator& compiled() const { return *compiled_; }
  /// Present only for screened methods.
  const ExtendedHamiltonian* extended() const { return h_ext_ ? &*h_ext_ : nullptr; }

  StateVector system_state(std::span<const double> params) const;
  StateVector screened_state(const StateVector& system) const;

  /// Energy part plus deflation penalties. `overlap_checks` counts penalty terms.
  double statevector(std::span<const double> params, const DeflationStack& stack,
                     std::size_t* overlap_checks = nullptr) const;

  struct ShotOutcome {
    double value = 0.0;
    bool aborted = false;
    std::size_t ancilla_measurements = 0;
    std::size_t overlap_checks = 0;
  };
  ShotOutcome shot(std::span<const double> params, const DeflationStack& stack, std::size_t n_shot,
                   Rng& rng) const;

  /// Same costs for an already prepared system state.
  double statevector_of(const StateVector& system, const DeflationStack& stack,
                        std::size_t* overlap_checks = nullptr) const;
  ShotOutcome shot_of(const StateVector& system, const DeflationStack& stack, std::size_t n_shot, Rng& rng) const;

 private:
  double penalty(const StateVector& system, const StateVector* screened, const DeflationStack& stack,
                 std::size_t* overlap_checks) const;

  PauliSum hamiltonian_;
  std::shared_ptr<const CompiledOperator> compiled_;
  VqdConfig config_;
  std::size_t n_spatial_;
  AnsatzSpec ansatz_;
  StateVector reference_;
  std::size_t n_anc_ = 0;
  std::optional<Circuit> screen_;
  std::optional<ExtendedHamiltonian> h_ext_;
};

double cost_statevector(std::span<const double> params, const CostEvaluator& evaluator, const DeflationStack& stack);

/// Shot-sampled cost with early abort on the first out-of-sector readout.
CostEvaluator::ShotOutcome cost_shot(std::span<const double> params, const CostEvaluator& evaluator,
                                     const DeflationStack& stack, std::size_t n_shot, Rng& rng);

double s_squared_diagnostic(const StateVector& state);

struct StateResult {
  std::size_t index = 0;
  double energy = 0.0;
  double cost = 0.0;
  std::vector<double> params;
  StateVector state{0};
  double s_squared = 0.0;
  /// Penalty-term evaluations for this state over all restarts.
  std::size_t overlap_checks = 0;
  /// Running total over states 0..index.
  std::size_t cumulative_overlap_checks = 0;
  std::vector<double> restart_costs;
  std::size_t selected_restart = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  /// Largest |<psi_j|psi>| against earlier states.
  double max_overlap = 0.0;
  double wall_time_s = 0.0;
};

struct VqdResult {
  std::vector<StateResult> states;
  double penalty_weight = 0.0;
  bool monotone = true;
  bool orthogonal = true;
  std::vector<std::string> flags;

  bool all_converged() const;
};

StateResult optimize_state(std::size_t k, const VqdConfig& config, const PauliSum& hamiltonian,
                           std::size_t n_spatial, const DeflationStack& stack);

VqdResult run_deflation(const VqdConfig& config, const PauliSum& hamiltonian, std::size_t n_spatial);

}  // namespace sfvqd
