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
#include <span>

#include <Eigen/Dense>

#include "sfvqd/statevector.hpp"

// Gate-application kernels. `kernels` holds the stride-based implementations
// used everywhere (OpenMP-parallel over independent amplitude groups when the
// register is large enough); `reference` holds a straightforward serial
// version kept for cross-checking and benchmarking.

namespace sfvqd::kernels {

/// Registers below this many amplitudes run serially.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

void apply_matrix(std::span<Complex> amplitudes, std::size_t n_qubits, const Eigen::MatrixXcd& matrix,
                  std::span<const Qubit> targets, std::span<const Qubit> controls);

double norm_squared(std::span<const Complex> amplitudes);

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace sfvqd::kernels

namespace sfvqd::reference {

void apply_matrix(std::span<Complex> amplitudes, std::size_t n_qubits, const Eigen::MatrixXcd& matrix,
                  std::span<const Qubit> targets, std::span<const Qubit> controls);

double norm_squared(std::span<const Complex> amplitudes);

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace sfvqd::reference
