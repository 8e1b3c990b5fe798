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

// Reference kernels. Straightforward loops, kept for testing the OpenMP
// versions and as the baseline in kernels_bench.

#include "corrspace/kernels.hpp"

#include "kernels_common.hpp"

namespace corrspace::kernels::serial {

using detail::bit_of;
using detail::pauli_masks;

void apply_1q(std::span<cplx> amps, int n, int pos, const Mat2& op) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t stride = bit_of(n, pos);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & stride) continue;
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | stride];
    amps[i] = op(0, 0) * a0 + op(0, 1) * a1;
    amps[i | stride] = op(1, 0) * a0 + op(1, 1) * a1;
  }
}

void apply_cz(std::span<cplx> amps, int n, int a, int b) {
  const std::size_t mask = bit_of(n, a) | bit_of(n, b);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] = -amps[i];
  }
}

void apply_controlled(std::span<cplx> amps, int n, int control, int target, const Mat2& op) {
  const std::size_t cbit = bit_of(n, control);
  const std::size_t tbit = bit_of(n, target);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(i & cbit) || (i & tbit)) continue;
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | tbit];
    amps[i] = op(0, 0) * a0 + op(0, 1) * a1;
    amps[i | tbit] = op(1, 0) * a0 + op(1, 1) * a1;
  }
}

VecX contract_qubit(std::span<const cplx> amps, int n, int pos, const Vec2& ket) {
  const std::size_t stride = bit_of(n, pos);
  const std::size_t half = std::size_t{1} << (n - 1);
  VecX out(static_cast<Eigen::Index>(half));
  const cplx b0 = std::conj(ket(0));
  const cplx b1 = std::conj(ket(1));
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = detail::insert_zero(static_cast<std::size_t>(k), stride);
    out(static_cast<Eigen::Index>(k)) = b0 * amps[i0] + b1 * amps[i0 | stride];
  }
  return out;
}

MatX contract_qubit_dm(const MatX& rho, int n, int pos, const Vec2& ket) {
  const std::size_t stride = bit_of(n, pos);
  const auto half = static_cast<Eigen::Index>(std::size_t{1} << (n - 1));
  MatX out(half, half);
  for (Eigen::Index k = 0; k < half; ++k) {
    const auto r0 = static_cast<Eigen::Index>(detail::insert_zero(static_cast<std::size_t>(k), stride));
    const auto r1 = r0 + static_cast<Eigen::Index>(stride);
    for (Eigen::Index l = 0; l < half; ++l) {
      const auto c0 = static_cast<Eigen::Index>(detail::insert_zero(static_cast<std::size_t>(l), stride));
      const auto c1 = c0 + static_cast<Eigen::Index>(stride);
      out(k, l) = std::conj(ket(0)) * (rho(r0, c0) * ket(0) + rho(r0, c1) * ket(1)) +
                  std::conj(ket(1)) * (rho(r1, c0) * ket(0) + rho(r1, c1) * ket(1));
    }
  }
  return out;
}

MatX reduce(const MatX& rho, int n, std::span<const int> keep_positions) {
  const auto maps = detail::reduction_maps(n, keep_positions);
  const auto kd = static_cast<Eigen::Index>(maps.kept.size());
  MatX out = MatX::Zero(kd, kd);
  for (Eigen::Index a = 0; a < kd; ++a) {
    for (Eigen::Index b = 0; b < kd; ++b) {
      cplx acc = 0.0;
      for (std::size_t e : maps.traced) {
        acc += rho(static_cast<Eigen::Index>(maps.kept[a] | e),
                   static_cast<Eigen::Index>(maps.kept[b] | e));
      }
      out(a, b) = acc;
    }
  }
  return out;
}

MatX reduce_pure(std::span<const cplx> amps, int n, std::span<const int> keep_positions) {
  const auto maps = detail::reduction_maps(n, keep_positions);
  const auto kd = static_cast<Eigen::Index>(maps.kept.size());
  MatX out = MatX::Zero(kd, kd);
  for (Eigen::Index a = 0; a < kd; ++a) {
    for (Eigen::Index b = 0; b < kd; ++b) {
      cplx acc = 0.0;
      for (std::size_t e : maps.traced) {
        acc += amps[maps.kept[a] | e] * std::conj(amps[maps.kept[b] | e]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

cplx pauli_expectation(std::span<const cplx> amps, int n, std::string_view word) {
  const auto masks = pauli_masks(n, word);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const double sign = (std::popcount(j & masks.sign) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[j ^ masks.flip]) * sign * amps[j];
  }
  return acc * masks.global_phase;
}

cplx pauli_expectation_dm(const MatX& rho, int n, std::string_view word) {
  const auto masks = pauli_masks(n, word);
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double sign = (std::popcount(ui & masks.sign) & 1) ? -1.0 : 1.0;
    acc += rho(i, static_cast<Eigen::Index>(ui ^ masks.flip)) * sign;
  }
  return acc * masks.global_phase;
}

void born_probabilities(const MatX& rho, std::span<const VecX> kets, std::span<double> out) {
  for (std::size_t j = 0; j < kets.size(); ++j) {
    out[j] = kets[j].dot(rho * kets[j]).real();
  }
}

MatX weighted_projector_sum(std::span<const VecX> kets, std::span<const double> weights, int dim) {
  MatX out = MatX::Zero(dim, dim);
  for (std::size_t j = 0; j < kets.size(); ++j) {
    out.noalias() += weights[j] * kets[j] * kets[j].adjoint();
  }
  return out;
}

}  // namespace corrspace::kernels::serial
