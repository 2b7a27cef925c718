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

// JSON forms of states, product decompositions and ensembles.
//
//   state:  {"kind": "pure", "dims": [2, 2], "amplitudes": [[re, im], ...]}
//           {"kind": "density", "dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//           optional "normalize": true
//   decomposition:
//           {"split": [[1, 2], [3]], "dims": [2, 2, 2],
//            "terms": [{"alpha": [re, im], "vectors": [[[re, im], ...], ...]}],
//            "residual": x}
//   ensemble:
//           {"split": ..., "dims": ..., "weights": [w, ...],
//            "members": [{"terms": ..., "residual": x}, ...]}
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schmidt/pure_measure.hpp"

namespace schmidt {

using json = nlohmann::json;

/// Thrown for malformed or inconsistent input documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs off by more than this from unit norm / trace are rejected unless
/// "normalize" is set.
inline constexpr double kInputNormTol = 1e-10;

struct LoadedState {
  DensityOperator rho;
  /// Present for "kind": "pure".
  std::optional<PureState> pure;
};

LoadedState parse_state(const json& doc);
LoadedState load_state(const std::string& path);

json state_to_json(const PureState& psi);
json state_to_json(const DensityOperator& rho);

json to_json(cplx z);
cplx complex_from_json(const json& j);

json decomposition_to_json(const ProductDecomposition& d);
/// `dims` fills in documents without a "dims" field.
ProductDecomposition parse_decomposition(const json& doc, const std::optional<std::vector<int>>& dims = std::nullopt);

struct WeightedDecomposition {
  double weight;
  ProductDecomposition decomposition;
};
json ensemble_to_json(const std::vector<WeightedDecomposition>& members);

/// Outcome of an independent reassembly check.
struct VerifyReport {
  int terms = 0;
  double claimed_residual = 0.0;
  /// |target - sum of terms|, recomputed digit by digit.
  double residual = 0.0;
  double max_alpha = 0.0;
  /// max | |v| - 1 | over all block vectors.
  double max_norm_defect = 0.0;
  bool passed = false;
};

/// Passes when the recomputed residual is below tol, every block vector has
/// unit norm (1e-10), max|alpha| <= norm_cap and the claimed residual agrees
/// with the recomputed one within tol.
VerifyReport verify_decomposition(const ProductDecomposition& d, const PureState& target, double tol = 1e-9,
                                  double norm_cap = 1e3);

struct EnsembleVerifyReport {
  int members = 0;
  /// |sum of weights - 1|.
  double weight_defect = 0.0;
  /// max |sum_i w_i |v_i><v_i| - rho| with v_i reassembled from the terms.
  double assembly_residual = 0.0;
  /// Largest term count over the members.
  int max_terms = 0;
  bool passed = false;
};

/// Checks an ensemble document against rho; passes below tol.
EnsembleVerifyReport verify_ensemble(const json& doc, const DensityOperator& rho, double tol = 1e-8);

json read_json_file(const std::string& path);

}  // namespace schmidt
