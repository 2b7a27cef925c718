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

// Command-line front end and the table builders behind it.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schmidt/io.hpp"
#include "schmidt/mixed_measure.hpp"
#include "schmidt/zoo.hpp"

namespace schmidt {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitInvariant = 3 };

/// One cell of the four-qubit pure-state table.
struct Table1Cell {
  std::string state;
  std::string split;
  int rank_lo = 1;
  int rank_hi = 1;
  bool exact = false;
  int expected_rank = 0;
  /// Closed bracket at the expected rank.
  bool match = false;
};

std::vector<Table1Cell> compute_table1(const FitOptions& fit = {});

/// One cell of the mixed-state table.
struct Table2Cell {
  std::string state;
  ZooParams params;
  std::string split;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  double expected = 0.0;
  std::string expected_form;
  /// Both bounds within 1e-6 of the tabulated value.
  bool match = false;
};

/// Grid {0.1, ..., 0.9} for rho_g, the molecule state, and the triangle
/// lambda, mu >= 0.1, lambda + mu <= 0.9 for rho_lambda_mu. `only` limits
/// the families by zoo name.
std::vector<Table2Cell> compute_table2(const MixedOptions& opts = {}, const std::vector<std::string>& only = {});

json table1_json(const std::vector<Table1Cell>& cells);
json table2_json(const std::vector<Table2Cell>& cells);

/// Rank-form string of a mixed value from its witness, e.g.
/// "0.600000*1 + 0.100000*log2(3)".
std::string mixed_form(const MixedMeasureValue& v);

/// Runs the command line; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schmidt
