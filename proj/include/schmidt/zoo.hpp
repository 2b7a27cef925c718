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

// Named states with known Schmidt measures.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/state.hpp"

namespace schmidt {

/// (|0...0> + |1...1>) / sqrt(2); N >= 2.
PureState ghz(int n);
/// Uniform superposition of the N single-excitation basis states; N >= 2.
PureState w(int n);
/// (|0000> + |0011> + |1100> - |1111>) / 2.
PureState cluster4();
/// (|00> + |11>) (|00> + |11>) / 2 on parties (A1 A2)(A3 A4).
PureState bell_pair_product();

/// lambda |psi-><psi-| + (1 - lambda) I / 4.
DensityOperator werner(double lambda);
/// lambda phi+_{12} 0_3 + mu phi+_{23} 0_1 + (1 - lambda - mu) phi+_{31} 0_2.
DensityOperator rho_lambda_mu(double lambda, double mu);
/// rho_lambda_mu(1/3, 1/3).
DensityOperator rho_molecule();
/// lambda |GHZ><GHZ| + (1 - lambda) |000><000|.
DensityOperator rho_g(double lambda);

/// Named numeric parameters, e.g. {"N": 4} or {"lambda": 0.7, "mu": 0.1}.
using ZooParams = std::map<std::string, double>;

/// A value the literature states for one split.
struct ExpectedValue {
  /// Split in text form, e.g. "12|3|4".
  std::string split;
  /// The stated value as written, e.g. "log2(3)", "2/3" or "1-lambda".
  std::string form;
  double value = 0.0;
  /// Rank whose log2 is the value, for pure states; 0 otherwise.
  int rank = 0;
};

struct ZooEntry {
  std::string name;
  std::string description;
  /// Parameter names with defaults.
  ZooParams defaults;
  bool pure = true;
  std::function<PureState(const ZooParams&)> build_pure;
  std::function<DensityOperator(const ZooParams&)> build_mixed;
  /// Values for the given parameters (empty where none are known).
  std::function<std::vector<ExpectedValue>(const ZooParams&)> expected;

  /// Parameters merged over the defaults; unknown names throw.
  ZooParams resolve(const ZooParams& given) const;
  /// Density operator of the entry (projector for pure entries).
  DensityOperator density(const ZooParams& given) const;
};

const std::vector<ZooEntry>& zoo();
/// Throws DomainError for unknown names.
const ZooEntry& zoo_entry(const std::string& name);

/// Splits of Table 1 for four qubits in row order.
const std::vector<std::string>& four_qubit_table_splits();
/// Splits of the three-party mixed-state table in row order.
const std::vector<std::string>& three_party_table_splits();

}  // namespace schmidt
