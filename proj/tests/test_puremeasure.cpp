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

#include <doctest.h>

#include <cmath>

#include "schmidt/pure_measure.hpp"
#include "schmidt/zoo.hpp"
#include "support.hpp"

using namespace schmidt;
using schmidt::testing::ket;
using schmidt::testing::qubits;

namespace {

// Applies an independent operator to every party of psi.
PureState apply_local(const PureState& psi, const std::vector<Matrix>& ops) {
  const Split full = Split::full(psi.layout().parties());
  Vector v = psi.amplitudes();
  for (int p = 0; p < psi.layout().parties(); ++p)
    v = apply_block_operator(v, psi.layout(), full, p, ops[static_cast<std::size_t>(p)]);
  return PureState(psi.layout(), v);
}

std::vector<Matrix> random_unitaries(const PartyLayout& l, Rng& rng) {
  std::vector<Matrix> out;
  for (int p = 0; p < l.parties(); ++p) out.push_back(random_unitary(l.dim(p), rng));
  return out;
}

std::vector<Matrix> random_invertibles(const PartyLayout& l, Rng& rng) {
  std::vector<Matrix> out;
  for (int p = 0; p < l.parties(); ++p) out.push_back(random_gaussian_matrix(l.dim(p), l.dim(p), rng));
  return out;
}

void check_exact(const PureState& psi, const Split& s, int rank) {
  const RankBracket b = rank_bracket(psi, s);
  CHECK(b.lo == rank);
  CHECK(b.hi == rank);
  CHECK(b.exact);
}

}  // namespace

TEST_SUITE("puremeasure") {
  TEST_CASE("Schmidt rank of basic two-party states") {
    const Split s = Split::full(2);
    CHECK(schmidt_rank(PureState(qubits(2), ket("00")), s) == 1);
    CHECK(schmidt_rank(PureState(qubits(2), ket("00") + ket("11")), s) == 2);
    CHECK(schmidt_rank(PureState(qubits(2), ket("00") + ket("01") + ket("10") + ket("11")), s) == 1);
    CHECK_THROWS_AS(schmidt_rank(ghz(3), Split::full(3)), DomainError);
  }

  TEST_CASE("flattening bound of GHZ and W is 2") {
    CHECK(flattening_lower_bound(ghz(3), Split::full(3)) == 2);
    CHECK(flattening_lower_bound(w(3), Split::full(3)) == 2);
    CHECK(flattening_lower_bound(ghz(4), Split::parse("12|34", 4)) == 2);
    CHECK(flattening_lower_bound(cluster4(), Split::parse("13|24", 4)) == 4);
  }

  TEST_CASE("W3 is certified at rank 3 by the hyperdeterminant") {
    const RankLowerBound lb = rank_lower_bound(w(3), Split::full(3));
    CHECK(lb.value == 3);
    CHECK(lb.method == "hyperdeterminant");
    CHECK(std::abs(hyperdeterminant(group_by_split(w(3), Split::full(3)))) < 1e-12);
    CHECK(std::abs(hyperdeterminant(group_by_split(ghz(3), Split::full(3)))) > 1e-3);
  }

  TEST_CASE("ALS fits GHZ3 with two terms") {
    const FitResult r = als_fit(ghz(3), Split::full(3), 2);
    CHECK(r.accepted(FitOptions{}));
    CHECK(r.decomposition.size() == 2);
    CHECK((r.decomposition.reassemble() - ghz(3).amplitudes()).norm() < 1e-9);
  }

  TEST_CASE("ALS fits W3 with three terms but not with two") {
    FitOptions opts;
    opts.restarts = 8;
    opts.max_iters = 2000;
    const FitResult three = als_fit(w(3), Split::full(3), 3, opts);
    CHECK(three.accepted(opts));
    const FitResult two = als_fit(w(3), Split::full(3), 2, opts);
    // Two-term approximations of W get arbitrarily close only with diverging
    // coefficients, so either the residual stays large or the cap trips.
    CHECK_FALSE(two.accepted(opts));
  }

  TEST_CASE("zoo brackets") {
    check_exact(ghz(3), Split::full(3), 2);
    check_exact(w(3), Split::full(3), 3);
    check_exact(ghz(4), Split::full(4), 2);
    check_exact(cluster4(), Split::full(4), 4);
    check_exact(bell_pair_product(), Split::parse("12|34", 4), 1);
    check_exact(bell_pair_product(), Split::full(4), 4);
    check_exact(w(4), Split::parse("12|34", 4), 2);
  }

  TEST_CASE("witnesses reassemble the state and respect the norm cap") {
    for (const PureState& psi : {ghz(3), w(3), cluster4()}) {
      const RankBracket b = rank_bracket(psi, Split::full(psi.layout().parties()));
      REQUIRE(b.witness_hi.has_value());
      CHECK(b.witness_hi->size() == b.hi);
      CHECK((b.witness_hi->reassemble() - psi.amplitudes()).norm() < 1e-9);
      for (const auto& t : b.witness_hi->terms) {
        CHECK(std::abs(t.alpha) <= 1e3);
        for (const auto& v : t.vectors) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("measure values and forms") {
    const MeasureValue m = schmidt_measure_pure(w(3), Split::full(3));
    CHECK(m.exact);
    CHECK(m.lo() == doctest::Approx(std::log2(3.0)));
    CHECK(m.rank_form() == "log2(3)");
    CHECK(log2_form(1) == "0");
    CHECK(log2_form(2) == "1");
    CHECK(log2_form(4) == "2");
    CHECK(log2_form(6) == "log2(6)");
    MeasureValue open;
    open.rank_lo = 2;
    open.rank_hi = 3;
    CHECK(open.rank_form() == "[1, log2(3)]");
  }

  TEST_CASE("canonicalize orders terms and fixes phases") {
    FitResult r = als_fit(w(3), Split::full(3), 3);
    REQUIRE(r.accepted(FitOptions{}));
    ProductDecomposition d = r.decomposition;
    const Vector before = d.reassemble();
    d.canonicalize();
    CHECK((d.reassemble() - before).norm() < 1e-12);
    for (int i = 1; i < d.size(); ++i)
      CHECK(std::abs(d.terms[static_cast<std::size_t>(i - 1)].alpha) >= std::abs(d.terms[static_cast<std::size_t>(i)].alpha));
    for (const auto& t : d.terms)
      for (const auto& v : t.vectors) {
        Eigen::Index k = 0;
        v.cwiseAbs().maxCoeff(&k);
        CHECK(std::abs(v(k).imag()) < 1e-12);
        CHECK(v(k).real() > 0.0);
      }
  }

  TEST_CASE("brackets are invariant under local unitaries") {
    Rng rng(101);
    for (const PureState& psi : {ghz(3), w(3), ghz(4), cluster4()}) {
      const Split s = Split::full(psi.layout().parties());
      const RankBracket base = rank_bracket(psi, s);
      for (int trial = 0; trial < 3; ++trial) {
        const RankBracket b = rank_bracket(apply_local(psi, random_unitaries(psi.layout(), rng)), s);
        CHECK(b.lo == base.lo);
        CHECK(b.hi == base.hi);
      }
    }
  }

  TEST_CASE("brackets are invariant under invertible local operators") {
    Rng rng(102);
    for (const PureState& psi : {ghz(3), w(3), ghz(4), cluster4()}) {
      const Split s = Split::full(psi.layout().parties());
      const RankBracket base = rank_bracket(psi, s);
      REQUIRE(base.exact);
      for (int trial = 0; trial < 3; ++trial) {
        const RankBracket b = rank_bracket(apply_local(psi, random_invertibles(psi.layout(), rng)), s);
        CHECK(b.lo == base.lo);
        CHECK(b.hi == base.hi);
      }
    }
  }

  TEST_CASE("coarser splits never need more terms") {
    Rng rng(103);
    const PartyLayout l = qubits(4);
    std::vector<PureState> states{ghz(4), w(4), cluster4(), bell_pair_product()};
    for (int i = 0; i < 3; ++i) states.push_back(schmidt::testing::random_state(l, rng));
    const auto three = enumerate_splits(4, 3);
    const auto two = enumerate_splits(4, 2);
    for (const auto& psi : states)
      for (const auto& fine : three) {
        const RankBracket f = rank_bracket(psi, fine);
        for (const auto& coarse : two) {
          // coarse must merge blocks of fine
          bool refines = true;
          for (const auto& b : fine.blocks()) {
            const int home = coarse.block_of(b.front());
            for (int p : b) refines = refines && coarse.block_of(p) == home;
          }
          if (!refines) continue;
          const RankBracket c = rank_bracket(psi, coarse);
          CHECK(c.lo <= f.hi);
        }
      }
  }

  TEST_CASE("tensor products multiply ranks") {
    const PureState g = ghz(3).tensor(ghz(3));
    // (A1A4)(A2A5)(A3A6) groups the two copies party by party.
    const Split paired(6, {{0, 3}, {1, 4}, {2, 5}});
    const RankBracket b = rank_bracket(g, paired);
    CHECK(b.lo == 4);
    CHECK(b.hi == 4);
    // Upper end: the tensor product of two witnesses is a witness.
    const PureState gw = ghz(3).tensor(w(3));
    CHECK(rank_lower_bound(gw, paired).value >= 4);
    CHECK(rank_lower_bound(gw, paired).value <= rank_bracket(ghz(3), Split::full(3)).hi * rank_bracket(w(3), Split::full(3)).hi);
  }

  TEST_CASE("2-splits agree with the Schmidt rank") {
    Rng rng(104);
    const std::vector<std::vector<int>> layouts{{2, 2, 2}, {2, 3, 2}, {2, 2, 2, 2}};
    for (const auto& dims : layouts) {
      const PartyLayout l(dims);
      for (int trial = 0; trial < 3; ++trial) {
        const PureState psi = schmidt::testing::random_state(l, rng);
        for (const auto& s : enumerate_splits(l.parties(), 2)) {
          const RankBracket b = rank_bracket(psi, s);
          CHECK(b.exact);
          CHECK(b.lo == schmidt_rank(psi, s));
        }
      }
    }
  }

  TEST_CASE("three-qubit brackets match the exact classification on 0/1 tensors") {
    int checked = 0;
    for (const auto& t : schmidt::testing::cube_test_set({0, 1})) {
      const PureState psi(qubits(3), schmidt::testing::cube_vector(t));
      const RankBracket b = rank_bracket(psi, Split::full(3));
      const int r = schmidt::testing::exact_rank_222(t);
      CAPTURE(checked);
      CHECK(b.lo == r);
      CHECK(b.hi == r);
      ++checked;
    }
    CHECK(checked == 255);
  }

  TEST_CASE("the substitution bound lifts rank past the flattenings") {
    // A 2x3x3 tensor whose slices are I and a nilpotent Jordan block has
    // flattening ranks at most 3 yet tensor rank 4.
    const PartyLayout l({2, 3, 3});
    Vector v = Vector::Zero(18);
    for (int i = 0; i < 3; ++i) v(3 * i + i) = 1.0;
    v(9 + 1) = 1.0;
    v(9 + 3 + 2) = 1.0;
    const PureState psi(l, v);
    const RankLowerBound lb = rank_lower_bound(psi, Split::full(3));
    CHECK(flattening_lower_bound(psi, Split::full(3)) == 3);
    CHECK(lb.value == 4);
    CHECK(lb.method == "substitution");
  }

  TEST_CASE("polynomial roots") {
    // (z - 1)(z + 2) = z^2 + z - 2
    auto r = polynomial_roots({cplx(-2), cplx(1), cplx(1)});
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] - cplx(-2)) < 1e-10);
    CHECK(std::abs(r[1] - cplx(1)) < 1e-10);
    CHECK(polynomial_roots({cplx(3), cplx(0)}).empty());
  }
}
