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

#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "corrspace/qmath.hpp"

namespace corrspace::kernels::detail {

inline std::size_t bit_of(int n, int pos) { return std::size_t{1} << (n - 1 - pos); }

// Spreads k around a zero at the bit `stride`.
inline std::size_t insert_zero(std::size_t k, std::size_t stride) {
  return ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
}

struct PauliMasks {
  std::size_t flip = 0;  // X or Y
  std::size_t sign = 0;  // Z or Y
  cplx global_phase = 1.0;
};

// P|j> = global_phase * (-1)^{popcount(j & sign)} |j ^ flip>
inline PauliMasks pauli_masks(int n, std::string_view word) {
  if (static_cast<int>(word.size()) != n) {
    throw std::invalid_argument("Pauli word length does not match register size");
  }
  PauliMasks m;
  for (int q = 0; q < n; ++q) {
    const std::size_t b = bit_of(n, q);
    switch (word[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': m.flip |= b; break;
      case 'Y':
        m.flip |= b;
        m.sign |= b;
        m.global_phase *= kI;
        break;
      case 'Z': m.sign |= b; break;
      default: throw std::invalid_argument("Pauli letters must be I, X, Y or Z");
    }
  }
  return m;
}

struct ReductionMaps {
  std::vector<std::size_t> kept;    // full index of each kept-subsystem basis state
  std::vector<std::size_t> traced;  // full index of each traced-subsystem basis state
};

inline ReductionMaps reduction_maps(int n, std::span<const int> keep) {
  std::size_t keep_mask = 0;
  for (int p : keep) keep_mask |= bit_of(n, p);
  std::vector<int> traced_pos;
  for (int q = 0; q < n; ++q) {
    if (!(keep_mask & bit_of(n, q))) traced_pos.push_back(q);
  }
  auto spread = [n](std::size_t local, std::span<const int> positions) {
    const int m = static_cast<int>(positions.size());
    std::size_t full = 0;
    for (int k = 0; k < m; ++k) {
      if (local & (std::size_t{1} << (m - 1 - k))) full |= bit_of(n, positions[k]);
    }
    return full;
  };
  ReductionMaps maps;
  maps.kept.resize(std::size_t{1} << keep.size());
  for (std::size_t a = 0; a < maps.kept.size(); ++a) maps.kept[a] = spread(a, keep);
  maps.traced.resize(std::size_t{1} << traced_pos.size());
  for (std::size_t e = 0; e < maps.traced.size(); ++e) maps.traced[e] = spread(e, traced_pos);
  return maps;
}

}  // namespace corrspace::kernels::detail
