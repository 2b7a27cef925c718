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

// Certified lower bounds on tensor rank.
//
// Three sources are combined:
//   * flattenings: every product decomposition with R terms induces matrix
//     rank <= R across each bipartition of the modes;
//   * the 2x2x2 classification: once all three flattenings have rank 2, the
//     tensor has rank 2 if its Cayley hyperdeterminant is nonzero and rank 3
//     otherwise;
//   * substitution: for a mode of dimension 2 with slices X0, X1,
//     rank(T) >= 1 + rank(a X0 + b X1) for all but at most one point (a:b)
//     of the projective line. The rank of the pencil is constant away from
//     the roots of finitely many polynomials, so it is enough to evaluate it
//     at those roots and at one generic point.
#pragma once

#include <string>
#include <vector>

#include "schmidt/linalg.hpp"

namespace schmidt {

/// A tensor restricted to the span of its mode fibers.
struct Compression {
  /// Core tensor; modes of rank 1 are removed.
  BlockTensor core;
  /// Orthonormal basis (d_b x r_b) for every original mode.
  std::vector<Matrix> bases;
  /// Original mode index of each core mode.
  std::vector<int> kept;
};

Compression compress(const BlockTensor& t, double tol = kRankTol);

/// Max matrix rank over all bipartitions of the modes (1 for < 2 modes).
int flattening_rank(const BlockTensor& t, double tol = kRankTol);

/// Cayley hyperdeterminant of a 2x2x2 tensor.
cplx hyperdeterminant(const BlockTensor& t);

/// Relative threshold under which |Det| / |T|^4 counts as zero.
inline constexpr double kHyperdetZeroTol = 1e-10;

struct RankLowerBound {
  int value = 0;
  /// "product", "matrix", "flattening", "hyperdeterminant" or "substitution".
  std::string method;
};

/// Sound lower bound on the tensor rank of t.
RankLowerBound tensor_rank_lower_bound(const BlockTensor& t, double tol = kRankTol);

/// Roots of sum_m coeffs[m] z^m (leading coefficients below rel_tol * max are
/// trimmed, which corresponds to roots at infinity).
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs, double rel_tol = 1e-10);

}  // namespace schmidt
