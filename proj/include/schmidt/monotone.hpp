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

// Randomized checks of the entanglement monotone conditions.
//
// A local measurement on one block maps rho to branches rho_j with
// probabilities p_j. The measure must not increase on average:
// sum_j p_j P(rho_j) <= P(rho). Only lower endpoints of the branch measures
// enter the left side, so a reported violation is a genuine counterexample.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/mixed_measure.hpp"
#include "schmidt/zoo.hpp"

namespace schmidt {

/// Kraus operators acting on one block of a split.
struct LocalChannel {
  int block = 0;
  std::vector<Matrix> kraus;
  /// Outcome label of every Kraus operator; operators sharing a label are
  /// not distinguished by the measurement.
  std::vector<int> outcome;

  int outcomes() const;
  /// max |sum_j E_j^dagger E_j - I|.
  double completeness_residual() const;
};

/// Kraus operators sliced from a Haar-random isometry d -> d * n_branches.
/// `n_outcomes` (0 = n_branches) merges branches j and j' when
/// j mod n_outcomes == j' mod n_outcomes.
LocalChannel random_local_channel(const PartyLayout& layout, const Split& split, int block, int n_branches,
                                  std::uint64_t seed, int n_outcomes = 0);

/// Projective measurement of one block in its computational basis.
LocalChannel basis_measurement(const PartyLayout& layout, const Split& split, int block);

/// Branches below this probability are not normalized.
inline constexpr double kBranchCutoff = 1e-12;

struct Branch {
  double p = 0.0;
  /// Normalized post-measurement state; absent for skipped branches.
  std::optional<DensityOperator> state;
  /// Set when the outcome has a single Kraus operator and the input is pure.
  std::optional<PureState> pure;
  bool skipped() const { return !state.has_value(); }
};

Branch apply_branch(const DensityOperator& rho, const Split& split, const LocalChannel& channel, int outcome);
Branch apply_branch(const PureState& psi, const Split& split, const LocalChannel& channel, int outcome);

enum class Verdict { verified, consistent, violation };
std::string to_string(Verdict v);

/// Certified measure interval of a state.
struct MeasureInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool exact() const { return upper - lower <= 1e-6; }
};

/// Interval from the rank bracket for pure states, from the mixed bounds
/// otherwise.
MeasureInterval measure_interval(const DensityOperator& rho, const Split& split, const MixedOptions& opts = {});

/// Lower endpoint only; cheap for pure states (no decomposition search).
double measure_lower_bound(const DensityOperator& rho, const Split& split, const MixedOptions& opts = {});

struct MonotoneReport {
  MeasureInterval before;
  std::vector<double> probabilities;
  std::vector<double> branch_lower;
  /// sum_j p_j L_j.
  double average_lower = 0.0;
  /// sum_j p_j - 1.
  double probability_defect = 0.0;
  Verdict verdict = Verdict::consistent;
};

/// Tolerance of the monotonicity and mixing comparisons.
inline constexpr double kMonotoneTol = 1e-6;

/// A violation is average_lower > before.upper + tol. A pass is "verified"
/// when the input's bracket is closed, "consistent" otherwise.
MonotoneReport check_monotonicity(const DensityOperator& rho, const Split& split, const LocalChannel& channel,
                                  const MixedOptions& opts = {});
/// As above with a precomputed interval for the input.
MonotoneReport check_monotonicity(const DensityOperator& rho, const MeasureInterval& before, const Split& split,
                                  const LocalChannel& channel, const MixedOptions& opts = {});

struct MixingReport {
  std::vector<double> component_upper;
  /// Sum_i w_i upper_i.
  double bound = 0.0;
  /// Upper bound found for the mixture.
  double mixture_upper = 0.0;
  Verdict verdict = Verdict::consistent;
};

/// Convexity: upper(sum_i w_i rho_i) <= sum_i w_i upper(rho_i) + tol.
MixingReport check_mixing(const std::vector<DensityOperator>& states, const std::vector<double>& weights,
                          const Split& split, const MixedOptions& opts = {});

struct SuiteCase {
  std::string state;
  std::string split;
  /// One-based block index the channel acts on.
  int party = 1;
  /// 1 for local unitaries.
  int branches = 2;
  std::uint64_t seed = 0;
  double p_before = 0.0;
  double average_lower = 0.0;
  Verdict verdict = Verdict::consistent;
};

struct SuiteOptions {
  /// Seeds 0 .. seeds-1 per (state, party, branch count).
  int seeds = 200;
  std::vector<int> branch_counts{2, 3};
  /// Zoo names with parameters, e.g. {"ghz", {{"N", 3}}}.
  std::vector<std::pair<std::string, ZooParams>> states;
  /// Empty means the full split.
  std::optional<std::string> split;
  /// Every n-th seed merges two Kraus operators into one outcome (0 = never).
  int grouped_every = 0;
  /// Seeds for single-branch (local unitary) cases, which compare the full
  /// interval before and after.
  int unitary_seeds = 10;
  MixedOptions mixed;
  /// Worker threads (0 = hardware concurrency).
  int threads = 0;
};

/// GHZ3, W3, GHZ4, W4 and the four-qubit cluster state.
std::vector<std::pair<std::string, ZooParams>> default_suite_states();

struct SuiteReport {
  std::vector<SuiteCase> cases;
  int violations = 0;
  int verified = 0;
  int consistent = 0;
};

/// Cases are ordered by state, party, branch count and seed regardless of
/// the number of threads. A unitary case is a violation when either endpoint
/// moves by more than the tolerance.
SuiteReport run_monotone_suite(const SuiteOptions& opts);

}  // namespace schmidt
