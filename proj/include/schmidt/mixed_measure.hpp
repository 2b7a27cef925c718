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

// Schmidt measure of density operators (convex roof over pure ensembles).
//
// Upper bounds are constructive: every value comes with an ensemble whose
// members carry certified rank witnesses. Lower bounds rest on one fact: a
// pure state that is not a product across the split has measure at least 1,
// so P(rho) >= 1 - s where s is the largest weight of split-product states
// that can be subtracted from rho. s is bounded from above by a positive
// partial transpose relaxation whose dual solution is checked in exact
// arithmetic of the original problem, not trusted from the solver.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/pure_measure.hpp"

namespace schmidt {

struct MixedOptions {
  FitOptions fit;
  /// Ensembles of size rank .. rank + extra_size are sampled.
  int extra_size = 4;
  /// Random isometries per ensemble size.
  int samples = 4;
  /// Random starts for the search of product vectors in the range.
  int product_starts = 48;
  std::uint64_t seed = 20260101;
};

struct WeightedState {
  double weight;
  PureState state;
};

struct BsaResult {
  /// Constructive separable weight; the product states below realize it.
  double s = 0.0;
  /// Certified upper bound on the optimal separable weight.
  double s_upper = 1.0;
  std::vector<WeightedState> separable_part;
  /// (rho - sum of the separable part) / (1 - s); absent when s == 1.
  std::optional<DensityOperator> remainder;
  /// True when s and s_upper agree within 1e-6.
  bool certified_feasible = false;
};

struct MixedMeasureValue {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<Ensemble> witness;
  /// Certified rank upper bound of every witness member.
  std::vector<int> witness_ranks;
  bool exact = false;
};

/// sum_i w_i log2(hi_i) over the ensemble.
double roof_upper_bound(const Ensemble& ensemble, const Split& split, const FitOptions& opts = {});

/// Best ensemble found for rho; `seeds` are evaluated as extra candidates.
/// `target` allows an early exit once the value reaches it.
MixedMeasureValue ensemble_search(const DensityOperator& rho, const Split& split, const MixedOptions& opts = {},
                                  const std::vector<Ensemble>& seeds = {}, double target = 0.0);

enum class PptVerdict { separable, entangled, inconclusive };
std::string to_string(PptVerdict v);

/// Partial transpose test across a 2-split; decisive for 2x2 and 2x3 blocks.
PptVerdict ppt_check(const DensityOperator& rho, const Split& split);

/// Upper bound on the weight of split-product states inside rho.
double separable_weight_bound(const DensityOperator& rho, const Split& split);

/// Best separable approximation across a 2-split.
BsaResult bsa(const DensityOperator& rho, const Split& split, const MixedOptions& opts = {});

/// P = 1 - s for two qubits.
MixedMeasureValue two_qubit_measure(const DensityOperator& rho, const MixedOptions& opts = {});

/// 3 lambda / 2 - 1 / 2 above lambda = 1/3, else 0.
double werner_measure(double lambda);

MixedMeasureValue schmidt_measure_mixed(const DensityOperator& rho, const Split& split,
                                        const MixedOptions& opts = {}, const std::vector<Ensemble>& seeds = {});

/// Unit product vectors (across the split) found in the column span of the
/// orthonormal `basis`, returned in the layout's index order.
std::vector<Vector> product_vectors_in_range(const Matrix& basis, const PartyLayout& layout, const Split& split,
                                             int starts, Rng& rng);

/// Largest weights p >= 0 with rho - sum_i p_i |v_i><v_i| >= 0 for unit
/// vectors v_i in the range of rho.
std::vector<double> max_product_weights(const DensityOperator& rho, const std::vector<Vector>& vectors);

/// Decomposition of a separable two-qubit operator (trace need not be 1)
/// into product vectors with squared norms as weights.
std::vector<WeightedState> two_qubit_product_decomposition(const Matrix& sigma);

}  // namespace schmidt
