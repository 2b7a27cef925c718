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

// Schmidt measure of pure states: log2 of the least number of product terms
// over the blocks of a split.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/rank_bounds.hpp"

namespace schmidt {

struct FitOptions {
  int max_iters = 10000;
  int restarts = 32;
  double eps_fit = 1e-9;
  /// Largest |alpha| accepted in a rank witness (the state has unit norm).
  double norm_cap = 1e3;
  std::uint64_t seed = 20260101;
  double rank_tol = kRankTol;
  /// Number of ranks tried above the lower bound before falling back to the
  /// trivial fiber decomposition.
  int sweep_width = 8;
};

struct ProductTerm {
  cplx alpha;
  /// One unit vector per block.
  std::vector<Vector> vectors;
};

struct ProductDecomposition {
  Split split;
  /// Local dimensions of the parties.
  std::vector<int> dims;
  std::vector<ProductTerm> terms;
  double residual = 0.0;

  int size() const { return static_cast<int>(terms.size()); }
  PartyLayout layout() const { return PartyLayout(dims); }

  /// Sum of the terms as amplitudes in the party index order.
  Vector reassemble() const;

  /// Sorts terms by descending |alpha| and makes the largest entry of every
  /// block vector real positive.
  void canonicalize();
};

struct FitResult {
  double residual = 0.0;
  ProductDecomposition decomposition;
  /// Set when some |alpha| exceeded the norm cap.
  bool norm_flag = false;
  bool accepted(const FitOptions& opts) const { return residual < opts.eps_fit && !norm_flag; }
};

struct RankBracket {
  int lo = 1;
  int hi = 1;
  std::optional<ProductDecomposition> witness_hi;
  bool exact = false;
  /// Which argument produced lo.
  std::string lower_certificate;
};

struct MeasureValue {
  int rank_lo = 1;
  int rank_hi = 1;
  bool exact = false;

  double lo() const;
  double hi() const;
  /// "0", "1", "log2(3)", or "[1, log2(3)]" for an open bracket.
  std::string rank_form() const;
};

/// log2 of an integer rank written as an integer when it is a power of two.
std::string log2_form(int rank);

/// Schmidt rank across a 2-split.
int schmidt_rank(const PureState& psi, const Split& split, double tol = kRankTol);

/// Largest Schmidt rank over all bipartitions of the split's blocks.
int flattening_lower_bound(const PureState& psi, const Split& split, double tol = kRankTol);

/// Flattening, 2x2x2 and substitution bounds on the split's tensor rank.
RankLowerBound rank_lower_bound(const PureState& psi, const Split& split, double tol = kRankTol);

/// Alternating least squares for an R-term decomposition; the best restart
/// wins.
FitResult als_fit(const PureState& psi, const Split& split, int R, const FitOptions& opts = {});

RankBracket rank_bracket(const PureState& psi, const Split& split, const FitOptions& opts = {});

MeasureValue schmidt_measure_pure(const PureState& psi, const Split& split, const FitOptions& opts = {});

}  // namespace schmidt
