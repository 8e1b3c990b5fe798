// Copyright 2026 The corrspace Authors
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

// OpenMP kernels. Each parallel loop writes disjoint outputs, so results do
// not depend on the thread count. Reductions over scalars combine fixed-size
// blocks in index order for the same reason.

#include <omp.h>

#include "corrspace/kernels.hpp"
#include "kernels_common.hpp"

namespace corrspace::kernels {

int max_threads() { return omp_get_max_threads(); }

namespace omp {

using detail::bit_of;
using detail::insert_zero;
using detail::pauli_masks;

namespace {

// Small registers are not worth a parallel region.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 10;
constexpr std::ptrdiff_t kBlock = 256;

// Deterministic sum of f(j) for j in [0, count).
template <class F>
cplx blocked_sum(std::ptrdiff_t count, F&& f) {
  const std::ptrdiff_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<cplx> partial(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static) if (count >= kParallelThreshold)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    cplx acc = 0.0;
    const std::ptrdiff_t end = std::min(count, (b + 1) * kBlock);
    for (std::ptrdiff_t j = b * kBlock; j < end; ++j) acc += f(j);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  cplx total = 0.0;
  for (const cplx& v : partial) total += v;
  return total;
}

}  // namespace

void apply_1q(std::span<cplx> amps, int n, int pos, const Mat2& op) {
  const std::size_t stride = bit_of(n, pos);
  const auto half = static_cast<std::ptrdiff_t>(amps.size() / 2);
  const cplx m00 = op(0, 0), m01 = op(0, 1), m10 = op(1, 0), m11 = op(1, 1);
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < half; ++k) {
    const std::size_t i = insert_zero(static_cast<std::size_t>(k), stride);
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | stride];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | stride] = m10 * a0 + m11 * a1;
  }
}

void apply_cz(std::span<cplx> amps, int n, int a, int b) {
  const std::size_t mask = bit_of(n, a) | bit_of(n, b);
  const auto dim = static_cast<std::ptrdiff_t>(amps.size());
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < dim; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if ((ui & mask) == mask) amps[ui] = -amps[ui];
  }
}

void apply_controlled(std::span<cplx> amps, int n, int control, int target, const Mat2& op) {
  const std::size_t cbit = bit_of(n, control);
  const std::size_t tbit = bit_of(n, target);
  const auto half = static_cast<std::ptrdiff_t>(amps.size() / 2);
  const cplx m00 = op(0, 0), m01 = op(0, 1), m10 = op(1, 0), m11 = op(1, 1);
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < half; ++k) {
    const std::size_t i = insert_zero(static_cast<std::size_t>(k), tbit);
    if (!(i & cbit)) continue;
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | tbit];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | tbit] = m10 * a0 + m11 * a1;
  }
}

VecX contract_qubit(std::span<const cplx> amps, int n, int pos, const Vec2& ket) {
  const std::size_t stride = bit_of(n, pos);
  const auto half = static_cast<std::ptrdiff_t>(amps.size() / 2);
  VecX out(half);
  const cplx b0 = std::conj(ket(0));
  const cplx b1 = std::conj(ket(1));
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), stride);
    out(k) = b0 * amps[i0] + b1 * amps[i0 | stride];
  }
  return out;
}

MatX contract_qubit_dm(const MatX& rho, int n, int pos, const Vec2& ket) {
  const std::size_t stride = bit_of(n, pos);
  const Eigen::Index half = rho.rows() / 2;
  const cplx b0 = std::conj(ket(0)), b1 = std::conj(ket(1));
  const cplx k0 = ket(0), k1 = ket(1);
  MatX out(half, half);
  // Eigen is column-major, so columns are the outer loop.
#pragma omp parallel for schedule(static) if (half * half >= kParallelThreshold)
  for (Eigen::Index l = 0; l < half; ++l) {
    const auto c0 = static_cast<Eigen::Index>(insert_zero(static_cast<std::size_t>(l), stride));
    const auto c1 = c0 + static_cast<Eigen::Index>(stride);
    for (Eigen::Index k = 0; k < half; ++k) {
      const auto r0 = static_cast<Eigen::Index>(insert_zero(static_cast<std::size_t>(k), stride));
      const auto r1 = r0 + static_cast<Eigen::Index>(stride);
      out(k, l) = b0 * (rho(r0, c0) * k0 + rho(r0, c1) * k1) +
                  b1 * (rho(r1, c0) * k0 + rho(r1, c1) * k1);
    }
  }
  return out;
}

MatX reduce(const MatX& rho, int n, std::span<const int> keep_positions) {
  const auto maps = detail::reduction_maps(n, keep_positions);
  const auto kd = static_cast<Eigen::Index>(maps.kept.size());
  MatX out(kd, kd);
  const std::ptrdiff_t work = static_cast<std::ptrdiff_t>(rho.size());
#pragma omp parallel for collapse(2) schedule(static) if (work >= kParallelThreshold)
  for (Eigen::Index b = 0; b < kd; ++b) {
    for (Eigen::Index a = 0; a < kd; ++a) {
      cplx acc = 0.0;
      for (std::size_t e : maps.traced) {
        acc += rho(static_cast<Eigen::Index>(maps.kept[static_cast<std::size_t>(a)] | e),
                   static_cast<Eigen::Index>(maps.kept[static_cast<std::size_t>(b)] | e));
      }
      out(a, b) = acc;
    }
  }
  return out;
}

MatX reduce_pure(std::span<const cplx> amps, int n, std::span<const int> keep_positions) {
  const auto maps = detail::reduction_maps(n, keep_positions);
  const auto kd = static_cast<Eigen::Index>(maps.kept.size());
  MatX out(kd, kd);
  const auto work = static_cast<std::ptrdiff_t>(kd * kd * static_cast<Eigen::Index>(maps.traced.size()));
#pragma omp parallel for collapse(2) schedule(static) if (work >= kParallelThreshold)
  for (Eigen::Index b = 0; b < kd; ++b) {
    for (Eigen::Index a = 0; a < kd; ++a) {
      const std::size_t ia = maps.kept[static_cast<std::size_t>(a)];
      const std::size_t ib = maps.kept[static_cast<std::size_t>(b)];
      cplx acc = 0.0;
      for (std::size_t e : maps.traced) acc += amps[ia | e] * std::conj(amps[ib | e]);
      out(a, b) = acc;
    }
  }
  return out;
}

cplx pauli_expectation(std::span<const cplx> amps, int n, std::string_view word) {
  const auto masks = pauli_masks(n, word);
  const cplx total = blocked_sum(static_cast<std::ptrdiff_t>(amps.size()), [&](std::ptrdiff_t j) {
    const auto uj = static_cast<std::size_t>(j);
    const double sign = (std::popcount(uj & masks.sign) & 1) ? -1.0 : 1.0;
    return std::conj(amps[uj ^ masks.flip]) * sign * amps[uj];
  });
  return total * masks.global_phase;
}

cplx pauli_expectation_dm(const MatX& rho, int n, std::string_view word) {
  const auto masks = pauli_masks(n, word);
  const cplx total = blocked_sum(static_cast<std::ptrdiff_t>(rho.rows()), [&](std::ptrdiff_t i) {
    const auto ui = static_cast<std::size_t>(i);
    const double sign = (std::popcount(ui & masks.sign) & 1) ? -1.0 : 1.0;
    return rho(i, static_cast<Eigen::Index>(ui ^ masks.flip)) * sign;
  });
  return total * masks.global_phase;
}

void born_probabilities(const MatX& rho, std::span<const VecX> kets, std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(kets.size());
  const std::ptrdiff_t work = count * static_cast<std::ptrdiff_t>(rho.size());
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const VecX& k = kets[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)] = k.dot(rho * k).real();
  }
}

MatX weighted_projector_sum(std::span<const VecX> kets, std::span<const double> weights, int dim) {
  MatX out(dim, dim);
  const std::ptrdiff_t work = static_cast<std::ptrdiff_t>(kets.size()) * dim * dim;
  // Each thread owns whole columns; the sum over kets runs in index order.
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold)
  for (Eigen::Index c = 0; c < dim; ++c) {
    VecX col = VecX::Zero(dim);
    for (std::size_t j = 0; j < kets.size(); ++j) {
      const cplx wc = weights[j] * std::conj(kets[j](c));
      if (wc == cplx{}) continue;
      col.noalias() += wc * kets[j];
    }
    out.col(c) = col;
  }
  return out;
}

}  // namespace omp
}  // namespace corrspace::kernels
