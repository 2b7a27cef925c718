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

#include "schmidt/monotone.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace schmidt {

namespace {

double log2i(int r) { return std::log2(static_cast<double>(r)); }

// The state vector of a rank-one density operator.
std::optional<PureState> as_pure(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  if (n > 1 && ev(n - 2) > 1e-10 * ev(n - 1)) return std::nullopt;
  return PureState(rho.layout(), es.eigenvectors().col(n - 1));
}

MeasureInterval pure_interval(const PureState& psi, const Split& split, const FitOptions& fit) {
  const RankBracket b = rank_bracket(psi, split, fit);
  return {log2i(b.lo), log2i(b.hi)};
}

Verdict judge(double lhs, const MeasureInterval& before) {
  if (lhs > before.upper + kMonotoneTol) return Verdict::violation;
  return before.exact() ? Verdict::verified : Verdict::consistent;
}

}  // namespace

int LocalChannel::outcomes() const {
  int n = 0;
  for (int o : outcome) n = std::max(n, o + 1);
  return n;
}

double LocalChannel::completeness_residual() const {
  if (kraus.empty()) return 1.0;
  const auto d = kraus.front().cols();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : kraus) sum += e.adjoint() * e;
  return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

LocalChannel random_local_channel(const PartyLayout& layout, const Split& split, int block, int n_branches,
                                  std::uint64_t seed, int n_outcomes) {
  if (n_branches < 1) throw DomainError("a channel needs at least one branch");
  if (block < 0 || block >= split.size()) throw DomainError("block index out of range");
  if (n_outcomes < 0 || n_outcomes > n_branches) throw DomainError("bad outcome count");
  if (n_outcomes == 0) n_outcomes = n_branches;
  const int d = split.block_dim(layout, block);
  Rng rng(seed);
  const Matrix v = random_isometry(static_cast<Eigen::Index>(d) * n_branches, d, rng);
  LocalChannel ch;
  ch.block = block;
  for (int j = 0; j < n_branches; ++j) {
    ch.kraus.push_back(v.middleRows(static_cast<Eigen::Index>(j) * d, d));
    ch.outcome.push_back(j % n_outcomes);
  }
  return ch;
}

LocalChannel basis_measurement(const PartyLayout& layout, const Split& split, int block) {
  const int d = split.block_dim(layout, block);
  LocalChannel ch;
  ch.block = block;
  for (int j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(d, d);
    e(j, j) = 1.0;
    ch.kraus.push_back(std::move(e));
    ch.outcome.push_back(j);
  }
  return ch;
}

Branch apply_branch(const DensityOperator& rho, const Split& split, const LocalChannel& channel, int outcome) {
  if (outcome < 0 || outcome >= channel.outcomes()) throw DomainError("outcome index out of range");
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t j = 0; j < channel.kraus.size(); ++j)
    if (channel.outcome[j] == outcome)
      out += conjugate_block_operator(rho.matrix(), rho.layout(), split, channel.block, channel.kraus[j]);
  Branch b;
  b.p = out.trace().real();
  if (b.p < kBranchCutoff) return b;
  b.state = DensityOperator::normalized(rho.layout(), out);
  return b;
}

Branch apply_branch(const PureState& psi, const Split& split, const LocalChannel& channel, int outcome) {
  int members = 0;
  std::size_t only = 0;
  for (std::size_t j = 0; j < channel.kraus.size(); ++j)
    if (channel.outcome[j] == outcome) {
      ++members;
      only = j;
    }
  if (members != 1) return apply_branch(DensityOperator::from_pure(psi), split, channel, outcome);
  const Vector v = apply_block_operator(psi.amplitudes(), psi.layout(), split, channel.block, channel.kraus[only]);
  Branch b;
  b.p = v.squaredNorm();
  if (b.p < kBranchCutoff) return b;
  b.pure = PureState(psi.layout(), v);
  b.state = DensityOperator::from_pure(*b.pure);
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::consistent:
      return "consistent";
    case Verdict::violation:
      return "violation";
  }
  return "?";
}

MeasureInterval measure_interval(const DensityOperator& rho, const Split& split, const MixedOptions& opts) {
  if (auto psi = as_pure(rho)) return pure_interval(*psi, split, opts.fit);
  const MixedMeasureValue v = schmidt_measure_mixed(rho, split, opts);
  return {v.lower, v.upper};
}

double measure_lower_bound(const DensityOperator& rho, const Split& split, const MixedOptions& opts) {
  if (auto psi = as_pure(rho)) return log2i(rank_lower_bound(*psi, split, opts.fit.rank_tol).value);
  return std::max(0.0, 1.0 - separable_weight_bound(rho, split));
}

MonotoneReport check_monotonicity(const DensityOperator& rho, const Split& split, const LocalChannel& channel,
                                  const MixedOptions& opts) {
  return check_monotonicity(rho, measure_interval(rho, split, opts), split, channel, opts);
}

MonotoneReport check_monotonicity(const DensityOperator& rho, const MeasureInterval& before, const Split& split,
                                  const LocalChannel& channel, const MixedOptions& opts) {
  MonotoneReport r;
  r.before = before;
  const auto psi = as_pure(rho);
  double total = 0.0;
  for (int o = 0; o < channel.outcomes(); ++o) {
    const Branch b = psi ? apply_branch(*psi, split, channel, o) : apply_branch(rho, split, channel, o);
    total += b.p;
    r.probabilities.push_back(b.p);
    const double l = b.skipped() ? 0.0 : measure_lower_bound(*b.state, split, opts);
    r.branch_lower.push_back(l);
    r.average_lower += b.p * l;
  }
  r.probability_defect = total - 1.0;
  r.verdict = judge(r.average_lower, before);
  return r;
}

MixingReport check_mixing(const std::vector<DensityOperator>& states, const std::vector<double>& weights,
                          const Split& split, const MixedOptions& opts) {
  if (states.empty() || states.size() != weights.size()) throw DomainError("states and weights differ in length");
  MixingReport r;
  std::vector<double> ws;
  std::vector<PureState> members;
  Matrix mix = Matrix::Zero(states.front().matrix().rows(), states.front().matrix().cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw DomainError("mixing weights must be nonnegative");
    const MixedMeasureValue v = schmidt_measure_mixed(states[i], split, opts);
    r.component_upper.push_back(v.upper);
    r.bound += weights[i] * v.upper;
    if (weights[i] <= 0.0) continue;
    mix += weights[i] * states[i].matrix();
    for (std::size_t j = 0; j < v.witness->size(); ++j) {
      ws.push_back(weights[i] * v.witness->weights()[j]);
      members.push_back(v.witness->states()[j]);
    }
  }
  const DensityOperator rho = DensityOperator::normalized(states.front().layout(), mix);
  double sum = 0.0;
  for (double w : ws) sum += w;
  for (double& w : ws) w /= sum;
  const std::vector<Ensemble> seeds{Ensemble(ws, members)};
  r.mixture_upper = ensemble_search(rho, split, opts, seeds).upper;
  r.verdict = r.mixture_upper > r.bound + kMonotoneTol ? Verdict::violation : Verdict::verified;
  return r;
}

std::vector<std::pair<std::string, ZooParams>> default_suite_states() {
  return {{"ghz", {{"N", 3}}}, {"w", {{"N", 3}}}, {"ghz", {{"N", 4}}}, {"w", {{"N", 4}}}, {"cluster4", {}}};
}

SuiteReport run_monotone_suite(const SuiteOptions& opts) {
  struct Prepared {
    std::string name;
    PureState psi;
    Split split;
    MeasureInterval before;
  };
  struct Job {
    std::size_t state;
    int block;
    int branches;
    std::uint64_t seed;
  };

  const auto states = opts.states.empty() ? default_suite_states() : opts.states;
  std::vector<Prepared> prepared;
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const ZooEntry& e = zoo_entry(states[s].first);
    if (!e.pure) throw DomainError("the monotonicity suite takes pure zoo states");
    const ZooParams p = e.resolve(states[s].second);
    PureState psi = e.build_pure(p);
    const int n = psi.layout().parties();
    Split split = opts.split ? Split::parse(*opts.split, n) : Split::full(n);
    std::string name = e.name;
    for (const auto& [k, v] : p) {
      std::ostringstream os;
      os << ' ' << k << '=' << v;
      name += os.str();
    }
    const MeasureInterval before = pure_interval(psi, split, opts.mixed.fit);
    prepared.push_back({name, std::move(psi), std::move(split), before});
    for (int b = 0; b < prepared.back().split.size(); ++b) {
      for (int seed = 0; seed < opts.unitary_seeds; ++seed) jobs.push_back({s, b, 1, static_cast<std::uint64_t>(seed)});
      for (int br : opts.branch_counts)
        for (int seed = 0; seed < opts.seeds; ++seed) jobs.push_back({s, b, br, static_cast<std::uint64_t>(seed)});
    }
  }

  std::vector<SuiteCase> cases(jobs.size());
  auto run = [&](const Job& job) {
    const Prepared& st = prepared[job.state];
    SuiteCase c;
    c.state = st.name;
    c.split = st.split.to_string();
    c.party = job.block + 1;
    c.branches = job.branches;
    c.seed = job.seed;
    c.p_before = st.before.upper;
    const bool grouped = job.branches >= 3 && opts.grouped_every > 0 && job.seed % static_cast<std::uint64_t>(opts.grouped_every) == 0;
    const LocalChannel ch = random_local_channel(st.psi.layout(), st.split, job.block, job.branches, job.seed,
                                                 grouped ? job.branches - 1 : 0);
    if (job.branches == 1) {
      const Branch b = apply_branch(st.psi, st.split, ch, 0);
      const MeasureInterval after = pure_interval(*b.pure, st.split, opts.mixed.fit);
      c.average_lower = after.lower;
      const bool same = std::abs(after.lower - st.before.lower) <= kMonotoneTol &&
                        std::abs(after.upper - st.before.upper) <= kMonotoneTol;
      c.verdict = !same ? Verdict::violation : st.before.exact() ? Verdict::verified : Verdict::consistent;
    } else {
      const MonotoneReport r =
          check_monotonicity(DensityOperator::from_pure(st.psi), st.before, st.split, ch, opts.mixed);
      c.average_lower = r.average_lower;
      c.verdict = std::abs(r.probability_defect) > 1e-9 ? Verdict::violation : r.verdict;
    }
    return c;
  };

  unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < jobs.size(); i = next++) cases[i] = run(jobs[i]);
    } catch (...) {
      errors[id] = std::current_exception();
      next = jobs.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SuiteReport rep;
  rep.cases = std::move(cases);
  for (const auto& c : rep.cases) {
    if (c.verdict == Verdict::violation) ++rep.violations;
    if (c.verdict == Verdict::verified) ++rep.verified;
    if (c.verdict == Verdict::consistent) ++rep.consistent;
  }
  return rep;
}

}  // namespace schmidt
