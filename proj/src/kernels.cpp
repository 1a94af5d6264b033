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

#include "sfvqd/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace sfvqd::kernels {
namespace {

using Index = std::int64_t;

std::uint64_t control_mask(std::size_t n_qubits, std::span<const Qubit> controls) {
  std::uint64_t mask = 0;
  for (Qubit c : controls) mask |= std::uint64_t{1} << bit_position(n_qubits, c);
  return mask;
}

// Spreads the bits of `i` around zero bits at the (ascending) positions.
inline std::uint64_t insert_zeros(std::uint64_t i, std::span<const std::size_t> sorted_positions) {
  for (std::size_t p : sorted_positions) {
    const std::uint64_t low = i & ((std::uint64_t{1} << p) - 1);
    i = ((i >> p) << (p + 1)) | low;
  }
  return i;
}

void apply_1q(std::span<Complex> amps, std::size_t n_qubits, const Eigen::MatrixXcd& m, Qubit target,
              std::uint64_t cmask) {
  const std::size_t pos = bit_position(n_qubits, target);
  const std::uint64_t bit = std::uint64_t{1} << pos;
  const std::uint64_t low = bit - 1;
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  const Index half = static_cast<Index>(amps.size() / 2);
  Complex* a = amps.data();
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
  for (Index k = 0; k < half; ++k) {
    const std::uint64_t i0 = ((static_cast<std::uint64_t>(k) >> pos) << (pos + 1)) | (k & low);
    if ((i0 & cmask) != cmask) continue;
    const std::uint64_t i1 = i0 | bit;
    const Complex v0 = a[i0], v1 = a[i1];
    a[i0] = m00 * v0 + m01 * v1;
    a[i1] = m10 * v0 + m11 * v1;
  }
}

void apply_2q(std::span<Complex> amps, std::size_t n_qubits, const Eigen::MatrixXcd& m, Qubit t0,
              Qubit t1, std::uint64_t cmask) {
  const std::size_t p0 = bit_position(n_qubits, t0);
  const std::size_t p1 = bit_position(n_qubits, t1);
  const std::array<std::size_t, 2> sorted{std::min(p0, p1), std::max(p0, p1)};
  const std::uint64_t b0 = std::uint64_t{1} << p0, b1 = std::uint64_t{1} << p1;
  Complex mm[16];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) mm[4 * r + c] = m(r, c);
  const Index quarter = static_cast<Index>(amps.size() / 4);
  Complex* a = amps.data();
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
  for (Index k = 0; k < quarter; ++k) {
    const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(k), sorted);
    if ((base & cmask) != cmask) continue;
    const std::uint64_t idx[4] = {base, base | b1, base | b0, base | b0 | b1};
    const Complex v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = mm[4 * r] * v[0] + mm[4 * r + 1] * v[1] + mm[4 * r + 2] * v[2] + mm[4 * r + 3] * v[3];
    }
  }
}

void apply_kq(std::span<Complex> amps, std::size_t n_qubits, const Eigen::MatrixXcd& m,
              std::span<const Qubit> targets, std::uint64_t cmask) {
  const std::size_t k = targets.size();
  const std::size_t sub = std::size_t{1} << k;
  std::vector<std::size_t> sorted(k);
  std::vector<std::uint64_t> offsets(sub, 0);
  for (std::size_t t = 0; t < k; ++t) sorted[t] = bit_position(n_qubits, targets[t]);
  for (std::size_t s = 0; s < sub; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      if ((s >> (k - 1 - t)) & 1) offsets[s] |= std::uint64_t{1} << sorted[t];
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const Index groups = static_cast<Index>(amps.size() >> k);
  Complex* a = amps.data();
#pragma omp parallel if (amps.size() >= kParallelThreshold)
  {
    std::vector<Complex> in(sub);
#pragma omp for
    for (Index g = 0; g < groups; ++g) {
      const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(g), sorted);
      if ((base & cmask) != cmask) continue;
      for (std::size_t s = 0; s < sub; ++s) in[s] = a[base | offsets[s]];
      for (std::size_t r = 0; r < sub; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < sub; ++c) acc += m(static_cast<Index>(r), static_cast<Index>(c)) * in[c];
        a[base | offsets[r]] = acc;
      }
    }
  }
}

}  // namespace

void apply_matrix(std::span<Complex> amplitudes, std::size_t n_qubits, const Eigen::MatrixXcd& matrix,
                  std::span<const Qubit> targets, std::span<const Qubit> controls) {
  const std::uint64_t cmask = control_mask(n_qubits, controls);
  switch (targets.size()) {
    case 1:
      apply_1q(amplitudes, n_qubits, matrix, targets[0], cmask);
      break;
    case 2:
      apply_2q(amplitudes, n_qubits, matrix, targets[0], targets[1], cmask);
      break;
    default:
      apply_kq(amplitudes, n_qubits, matrix, targets, cmask);
  }
}

double norm_squared(std::span<const Complex> amplitudes) {
  double acc = 0.0;
  const Index n = static_cast<Index>(amplitudes.size());
  const Complex* a = amplitudes.data();
#pragma omp parallel for reduction(+ : acc) if (amplitudes.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) acc += std::norm(a[i]);
  return acc;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  double re = 0.0, im = 0.0;
  const Index n = static_cast<Index>(a.size());
  const Complex* pa = a.data();
  const Complex* pb = b.data();
#pragma omp parallel for reduction(+ : re, im) if (a.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const Complex v = std::conj(pa[i]) * pb[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

}  // namespace sfvqd::kernels

namespace sfvqd::reference {

void apply_matrix(std::span<Complex> amplitudes, std::size_t n_qubits, const Eigen::MatrixXcd& matrix,
                  std::span<const Qubit> targets, std::span<const Qubit> controls) {
  const std::size_t k = targets.size();
  std::vector<Complex> out(amplitudes.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    bool active = true;
    for (Qubit c : controls) active = active && ((i >> bit_position(n_qubits, c)) & 1);
    if (!active) {
      out[i] += amplitudes[i];
      continue;
    }
    std::size_t col = 0;
    std::size_t cleared = i;
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t p = bit_position(n_qubits, targets[t]);
      col = (col << 1) | ((i >> p) & 1);
      cleared &= ~(std::size_t{1} << p);
    }
    for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
      std::size_t j = cleared;
      for (std::size_t t = 0; t < k; ++t) {
        if ((row >> (k - 1 - t)) & 1) j |= std::size_t{1} << bit_position(n_qubits, targets[t]);
      }
      out[j] += matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * amplitudes[i];
    }
  }
  std::copy(out.begin(), out.end(), amplitudes.begin());
}

double norm_squared(std::span<const Complex> amplitudes) {
  double acc = 0.0;
  for (const Complex& a : amplitudes) acc += std::norm(a);
  return acc;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace sfvqd::reference
