// Copyright 2026 The Schmidt Measure Authors
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

// Shared fixtures and the exact three-qubit rank oracle.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "schmidt/linalg.hpp"
#include "schmidt/state.hpp"

namespace schmidt::testing {

inline PartyLayout qubits(int n) { return PartyLayout(std::vector<int>(static_cast<std::size_t>(n), 2)); }

inline PureState random_state(const PartyLayout& layout, Rng& rng) {
  return PureState(layout, random_gaussian_vector(static_cast<Eigen::Index>(layout.total()), rng));
}

inline DensityOperator random_density(const PartyLayout& layout, int rank, Rng& rng) {
  const Matrix g = random_gaussian_matrix(static_cast<Eigen::Index>(layout.total()), rank, rng);
  return DensityOperator::normalized(layout, g * g.adjoint());
}

/// Basis state |bits> with party 1 the leftmost character.
inline Vector ket(const char* bits) {
  std::size_t n = 0, idx = 0;
  for (const char* p = bits; *p; ++p, ++n) idx = 2 * idx + static_cast<std::size_t>(*p - '0');
  Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

/// Integer 2x2x2 tensor, index (i, j, k) -> 4i + 2j + k.
using IntCube = std::array<long long, 8>;

/// Rank of a 2x4 integer matrix given as two rows, decided by its minors.
inline int rank_2x4(const std::array<long long, 4>& r0, const std::array<long long, 4>& r1) {
  bool any = false;
  for (long long x : r0) any = any || x != 0;
  for (long long x : r1) any = any || x != 0;
  if (!any) return 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (r0[static_cast<std::size_t>(a)] * r1[static_cast<std::size_t>(b)] -
              r0[static_cast<std::size_t>(b)] * r1[static_cast<std::size_t>(a)] !=
          0)
        return 2;
  return 1;
}

/// Exact tensor rank of a nonzero integer 2x2x2 tensor from its three
/// flattening ranks and the sign of Cayley's hyperdeterminant.
inline int exact_rank_222(const IntCube& t) {
  auto at = [&](int i, int j, int k) { return t[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
  int flat[3];
  for (int mode = 0; mode < 3; ++mode) {
    std::array<long long, 4> rows[2];
    for (int v = 0; v < 2; ++v) {
      int c = 0;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const long long e = mode == 0 ? at(v, x, y) : mode == 1 ? at(x, v, y) : at(x, y, v);
          rows[v][static_cast<std::size_t>(c++)] = e;
        }
    }
    flat[mode] = rank_2x4(rows[0], rows[1]);
  }
  if (flat[0] == 1 && flat[1] == 1 && flat[2] == 1) return 1;
  if (flat[0] == 1 || flat[1] == 1 || flat[2] == 1) return 2;
  const long long a000 = at(0, 0, 0), a001 = at(0, 0, 1), a010 = at(0, 1, 0), a011 = at(0, 1, 1);
  const long long a100 = at(1, 0, 0), a101 = at(1, 0, 1), a110 = at(1, 1, 0), a111 = at(1, 1, 1);
  const long long det = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
                        a100 * a100 * a011 * a011 -
                        2 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
                             a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101) +
                        4 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111);
  return det != 0 ? 2 : 3;
}

/// Every nonzero tensor with entries in `values`.
inline std::vector<IntCube> cube_test_set(const std::vector<long long>& values) {
  std::vector<IntCube> out;
  const std::size_t b = values.size();
  std::size_t total = 1;
  for (int i = 0; i < 8; ++i) total *= b;
  for (std::size_t code = 0; code < total; ++code) {
    IntCube t{};
    std::size_t c = code;
    bool nonzero = false;
    for (std::size_t i = 0; i < 8; ++i) {
      t[i] = values[c % b];
      c /= b;
      nonzero = nonzero || t[i] != 0;
    }
    if (nonzero) out.push_back(t);
  }
  return out;
}

inline Vector cube_vector(const IntCube& t) {
  Vector v(8);
  for (std::size_t i = 0; i < 8; ++i) v(static_cast<Eigen::Index>(i)) = static_cast<double>(t[i]);
  return v;
}

}  // namespace schmidt::testing
