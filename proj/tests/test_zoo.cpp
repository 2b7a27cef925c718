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

#include "schmidt/mixed_measure.hpp"
#include "schmidt/zoo.hpp"
#include "support.hpp"

using namespace schmidt;
using schmidt::testing::ket;
using schmidt::testing::qubits;

TEST_SUITE("statezoo") {
  TEST_CASE("GHZ and W amplitudes") {
    const double r2 = 1.0 / std::sqrt(2.0);
    CHECK((ghz(3).amplitudes() - r2 * (ket("000") + ket("111"))).norm() < 1e-14);
    CHECK((w(3).amplitudes() - (ket("001") + ket("010") + ket("100")) / std::sqrt(3.0)).norm() < 1e-14);
    CHECK((w(4).amplitudes() - (ket("0001") + ket("0010") + ket("0100") + ket("1000")) / 2.0).norm() < 1e-14);
    CHECK_THROWS_AS(ghz(1), DomainError);
    CHECK_THROWS_AS(w(1), DomainError);
  }

  TEST_CASE("cluster and Bell-pair amplitudes") {
    const Vector c = (ket("0000") + ket("0011") + ket("1100") - ket("1111")) / 2.0;
    CHECK((cluster4().amplitudes() - c).norm() < 1e-14);
    const Vector b = (ket("0000") + ket("0011") + ket("1100") + ket("1111")) / 2.0;
    CHECK((bell_pair_product().amplitudes() - b).norm() < 1e-14);
  }

  TEST_CASE("mixed entries are valid density operators") {
    for (const auto& rho : {werner(0.0), werner(1.0), rho_g(0.3), rho_lambda_mu(0.2, 0.3), rho_lambda_mu(1.0, 0.0)}) {
      CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(min_eigenvalue(rho.matrix()) > -1e-12);
    }
  }

  TEST_CASE("the molecule state is the symmetric point") {
    CHECK((rho_molecule().matrix() - rho_lambda_mu(1.0 / 3.0, 1.0 / 3.0).matrix()).norm() < 1e-14);
  }

  TEST_CASE("rho(lambda, mu) places each Bell pair on its parties") {
    // lambda = 1: Bell pair on parties 1, 2 with party 3 in |0>.
    const Vector a = (ket("000") + ket("110")) / std::sqrt(2.0);
    CHECK((rho_lambda_mu(1.0, 0.0).matrix() - a * a.adjoint()).norm() < 1e-14);
    const Vector b = (ket("000") + ket("011")) / std::sqrt(2.0);
    CHECK((rho_lambda_mu(0.0, 1.0).matrix() - b * b.adjoint()).norm() < 1e-14);
    const Vector c = (ket("000") + ket("101")) / std::sqrt(2.0);
    CHECK((rho_lambda_mu(0.0, 0.0).matrix() - c * c.adjoint()).norm() < 1e-14);
  }

  TEST_CASE("parameters outside the domain are rejected") {
    CHECK_THROWS_AS(werner(-0.1), DomainError);
    CHECK_THROWS_AS(werner(1.1), DomainError);
    CHECK_THROWS_AS(rho_g(2.0), DomainError);
    CHECK_THROWS_AS(rho_lambda_mu(0.7, 0.7), DomainError);
    CHECK_THROWS_AS(zoo_entry("nope"), DomainError);
    CHECK_THROWS_AS(zoo_entry("ghz").resolve({{"lambda", 0.1}}), DomainError);
    CHECK_THROWS_AS(zoo_entry("ghz").density({{"N", 2.5}}), DomainError);
  }

  TEST_CASE("lookup and defaults") {
    const ZooEntry& e = zoo_entry("rho_lambda_mu");
    CHECK_FALSE(e.pure);
    const ZooParams p = e.resolve({{"mu", 0.1}});
    CHECK(p.at("lambda") == doctest::Approx(0.2));
    CHECK(p.at("mu") == doctest::Approx(0.1));
    CHECK(zoo_entry("ghz").density({{"N", 4}}).layout().parties() == 4);
    CHECK(zoo().size() >= 8);
  }

  TEST_CASE("table splits") {
    CHECK(four_qubit_table_splits() == std::vector<std::string>{"1|2|3|4", "12|3|4", "12|34", "13|24", "123|4"});
    CHECK(three_party_table_splits() == std::vector<std::string>{"1|2|3", "12|3", "13|2", "1|23"});
  }

  TEST_CASE("tabulated four-qubit ranks") {
    auto ranks = [](const std::string& name) {
      std::vector<int> out;
      for (const auto& v : zoo_entry(name).expected({{"N", 4}})) out.push_back(v.rank);
      return out;
    };
    CHECK(ranks("ghz") == std::vector<int>{2, 2, 2, 2, 2});
    CHECK(ranks("w") == std::vector<int>{4, 3, 2, 2, 2});
    CHECK(zoo_entry("cluster4").expected({}).size() == 5);
    const auto bell = zoo_entry("bell_pair_product").expected({});
    CHECK(bell[2].rank == 1);
    CHECK(bell[2].value == doctest::Approx(0.0));
    CHECK(bell[0].form == "2");
  }

  TEST_CASE("pure entries reach their tabulated ranks") {
    for (const char* name : {"ghz", "w", "cluster4", "bell_pair_product"}) {
      CAPTURE(name);
      const ZooEntry& e = zoo_entry(name);
      const ZooParams p = e.resolve(e.defaults.count("N") ? ZooParams{{"N", 4}} : ZooParams{});
      const PureState psi = e.build_pure(p);
      for (const auto& v : e.expected(p)) {
        CAPTURE(v.split);
        const RankBracket b = rank_bracket(psi, Split::parse(v.split, 4));
        CHECK(b.lo == v.rank);
        CHECK(b.hi == v.rank);
        CHECK(v.value == doctest::Approx(std::log2(static_cast<double>(v.rank))));
      }
    }
  }

  TEST_CASE("rho_g and full-split cells are reproduced") {
    for (double lambda : {0.2, 0.7}) {
      const auto exp = zoo_entry("rho_g").expected({{"lambda", lambda}});
      for (const auto& v : exp) {
        const MixedMeasureValue m = schmidt_measure_mixed(rho_g(lambda), Split::parse(v.split, 3));
        CHECK(m.lower == doctest::Approx(v.value).epsilon(1e-6));
        CHECK(m.upper == doctest::Approx(v.value).epsilon(1e-6));
      }
    }
    for (const char* name : {"rho_m", "rho_lambda_mu"}) {
      const ZooEntry& e = zoo_entry(name);
      const auto exp = e.expected(e.resolve({}));
      REQUIRE(exp.front().split == "1|2|3");
      const MixedMeasureValue m = schmidt_measure_mixed(e.density({}), Split::full(3));
      CHECK(m.lower == doctest::Approx(exp.front().value).epsilon(1e-6));
      CHECK(m.upper == doctest::Approx(exp.front().value).epsilon(1e-6));
    }
  }
}
