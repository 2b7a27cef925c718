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

#include <array>
#include <cmath>
#include <functional>
#include <set>

#include "schmidt/linalg.hpp"
#include "schmidt/split.hpp"
#include "schmidt/zoo.hpp"
#include "support.hpp"

using namespace schmidt;
using schmidt::testing::ket;
using schmidt::testing::qubits;

namespace {

using BlockSet = std::set<std::vector<std::vector<int>>>;

// All set partitions by brute force: every labelling of the parties with k
// labels that uses each label, deduplicated as sorted block lists.
BlockSet brute_force_partitions(int n, int k) {
  BlockSet out;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
      for (int p = 0; p < n; ++p) blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(p)])].push_back(p);
      for (const auto& b : blocks)
        if (b.empty()) return;
      std::sort(blocks.begin(), blocks.end());
      out.insert(blocks);
      return;
    }
    for (int l = 0; l < k; ++l) {
      label[static_cast<std::size_t>(i)] = l;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

BlockSet as_set(const std::vector<Split>& splits) {
  BlockSet out;
  for (const auto& s : splits) {
    auto b = s.blocks();
    std::sort(b.begin(), b.end());
    out.insert(b);
  }
  return out;
}

}  // namespace

TEST_SUITE("statecore") {
  TEST_CASE("layouts reject trivial parties and oversized systems") {
    CHECK_THROWS_AS(PartyLayout({2, 1}), DomainError);
    CHECK_THROWS_AS(PartyLayout(std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(PartyLayout(std::vector<int>(13, 2)), DomainError);
    CHECK_NOTHROW(PartyLayout(std::vector<int>(12, 2)));
    const PartyLayout l({2, 3, 4});
    CHECK(l.total() == 24);
    CHECK(l.stride(0) == 12);
    CHECK(l.stride(2) == 1);
  }

  TEST_CASE("pure states are normalized on construction") {
    Vector v(4);
    v << 3.0, 0.0, 0.0, 4.0;
    const PureState psi(qubits(2), v);
    CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(psi[0] - cplx(0.6)) < 1e-12);
    CHECK_THROWS_AS(PureState(qubits(2), Vector::Zero(4)), DomainError);
    CHECK_THROWS_AS(PureState(qubits(2), Vector::Ones(3)), DomainError);
  }

  TEST_CASE("density operators validate hermiticity, trace and positivity") {
    Matrix m = Matrix::Identity(4, 4) / 4.0;
    CHECK_NOTHROW(DensityOperator(qubits(2), m));
    Matrix bad = m;
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityOperator(qubits(2), bad), DomainError);
    CHECK_THROWS_AS(DensityOperator(qubits(2), 2.0 * m), DomainError);
    Matrix neg = m;
    neg(0, 0) = -0.25;
    neg(1, 1) = 0.75;
    CHECK_THROWS_AS(DensityOperator(qubits(2), neg), DomainError);
  }

  TEST_CASE("split parsing and canonical form") {
    const Split s = Split::parse("3|21|4", 4);
    CHECK(s.to_string() == "12|3|4");
    CHECK(s.label() == "(A1A2)A3A4");
    CHECK(s.one_based() == std::vector<std::vector<int>>{{1, 2}, {3}, {4}});
    CHECK(s.block_of(2) == 1);
    CHECK_THROWS_AS(Split::parse("12|2", 3), DomainError);
    CHECK_THROWS_AS(Split::parse("12", 3), DomainError);
    CHECK_THROWS_AS(Split::parse("123", 3), DomainError);
    CHECK_THROWS_AS(Split(3, {{0, 1, 2}}), DomainError);
  }

  TEST_CASE("three parties have the three 2-splits") {
    const auto s = enumerate_splits(3, 2);
    REQUIRE(s.size() == 3);
    std::set<std::string> names;
    for (const auto& x : s) names.insert(x.to_string());
    CHECK(names == std::set<std::string>{"12|3", "13|2", "1|23"});
  }

  TEST_CASE("two parties have a single split") {
    const auto s = enumerate_splits(2, 2);
    REQUIRE(s.size() == 1);
    CHECK(s.front().to_string() == "1|2");
  }

  TEST_CASE("four parties have seven 2-splits") { CHECK(enumerate_splits(4, 2).size() == 7); }

  TEST_CASE("split size out of range is a domain error") {
    CHECK_THROWS_AS(enumerate_splits(3, 1), DomainError);
    CHECK_THROWS_AS(enumerate_splits(3, 4), DomainError);
    CHECK(enumerate_splits(4, std::nullopt).size() == 7 + 6 + 1);
  }

  TEST_CASE("split enumeration equals brute-force set partitions") {
    for (int n = 2; n <= 6; ++n)
      for (int k = 2; k <= n; ++k) {
        CAPTURE(n);
        CAPTURE(k);
        const auto got = enumerate_splits(n, k);
        const BlockSet want = brute_force_partitions(n, k);
        CHECK(got.size() == want.size());
        CHECK(as_set(got) == want);
        for (const auto& s : got) CHECK(Split(n, s.blocks()) == s);
      }
  }

  TEST_CASE("matricize a product state") {
    const PureState psi(qubits(2), ket("00"));
    const Matrix m = matricize(psi, Split::full(2), std::array<int, 1>{0});
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = 1.0;
    CHECK((m - want).norm() < 1e-12);
  }

  TEST_CASE("matricize a Bell state") {
    const PureState psi(qubits(2), ket("00") + ket("11"));
    const Matrix m = matricize(psi, Split::full(2), std::array<int, 1>{0});
    CHECK((m - Matrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-12);
  }

  TEST_CASE("matricize GHZ3 across (A1A2)A3") {
    const Matrix m = matricize(ghz(3), Split::parse("12|3", 3), std::array<int, 1>{0});
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 2);
    Matrix want = Matrix::Zero(4, 2);
    want(0, 0) = want(3, 1) = 1.0 / std::sqrt(2.0);
    CHECK((m - want).norm() < 1e-12);
  }

  TEST_CASE("matricize rejects empty and full subsets") {
    const PureState psi = ghz(3);
    const Split s = Split::full(3);
    CHECK_THROWS_AS(matricize(psi, s, std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(matricize(psi, s, std::vector<int>{0, 1, 2}), DomainError);
  }

  TEST_CASE("matricize keeps the mixed-radix order on uneven dims") {
    Rng rng(5);
    const PartyLayout l({2, 3, 2});
    const PureState psi = schmidt::testing::random_state(l, rng);
    const Matrix m = matricize(psi, Split::parse("13|2", 3), std::array<int, 1>{0});
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 3);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(m(2 * a + c, b) - psi[static_cast<std::size_t>(6 * a + 2 * b + c)]) < 1e-14);
  }

  TEST_CASE("numerical rank") {
    CHECK(numerical_rank(Matrix::Identity(2, 2)) == 2);
    Matrix e = Matrix::Zero(2, 2);
    e(0, 0) = 1.0;
    CHECK(numerical_rank(e) == 1);
    CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);
    Rng rng(11);
    const Vector u = random_gaussian_vector(4, rng);
    CHECK(numerical_rank(u * u.adjoint()) == 1);
    CHECK(numerical_rank(1e-9 * Matrix::Identity(3, 3)) == 3);
  }

  TEST_CASE("Schmidt rank is the same on both sides of a 2-split") {
    Rng rng(21);
    const std::vector<std::vector<int>> layouts{{2, 2, 2}, {2, 3, 2}, {3, 2, 2, 2}, {2, 2, 2, 2}};
    for (const auto& dims : layouts) {
      const PartyLayout l(dims);
      for (int trial = 0; trial < 4; ++trial) {
        // Low-rank states make the check non-trivial.
        PureState psi = schmidt::testing::random_state(l, rng);
        if (trial % 2) {
          const Split s = enumerate_splits(l.parties(), 2).front();
          Matrix m = matricize(psi, s, std::array<int, 1>{0});
          Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
          Eigen::VectorXd sv = svd.singularValues();
          for (Eigen::Index i = 1; i < sv.size(); ++i) sv(i) = 0.0;
          m = svd.matrixU().leftCols(sv.size()) * sv.cast<cplx>().asDiagonal() * svd.matrixV().leftCols(sv.size()).adjoint();
          psi = PureState(l, ungroup(unflatten(m, s.block_dims(l), std::array<int, 1>{0}), l, s));
        }
        for (const auto& s : enumerate_splits(l.parties(), 2)) {
          const int a = numerical_rank(matricize(psi, s, std::array<int, 1>{0}));
          const int b = numerical_rank(matricize(psi, s, std::array<int, 1>{1}));
          CHECK(a == b);
        }
      }
    }
  }

  TEST_CASE("spectral ensembles reassemble the density operator") {
    Rng rng(31);
    for (int r : {1, 2, 4, 8}) {
      const DensityOperator rho = schmidt::testing::random_density(qubits(3), r, rng);
      const Ensemble e = Ensemble::from_density(rho);
      CHECK(e.size() == static_cast<std::size_t>(r));
      double sum = 0.0;
      for (double w : e.weights()) sum += w;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((e.assemble().matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("ensembles reject weights that do not sum to one") {
    const PureState a(qubits(2), ket("00"));
    CHECK_THROWS_AS(Ensemble({0.5, 0.4}, {a, a}), DomainError);
    CHECK_THROWS_AS(Ensemble({1.0}, {}), DomainError);
  }

  TEST_CASE("partial transpose of a Werner state") {
    // Oracle: the smallest eigenvalue of the partial transpose is (1 - 3 lambda) / 4.
    const std::array<int, 2> dims{2, 2};
    const std::array<int, 1> second{1};
    CHECK(min_eigenvalue(partial_transpose(werner(0.5).matrix(), dims, second)) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(min_eigenvalue(partial_transpose(werner(0.25).matrix(), dims, second)) == doctest::Approx(0.0625).epsilon(1e-12));
  }

  TEST_CASE("block operators act on the intended parties") {
    Rng rng(41);
    const PartyLayout l = qubits(3);
    const PureState psi = schmidt::testing::random_state(l, rng);
    const Matrix u = random_unitary(2, rng);
    const Vector got = apply_block_operator(psi.amplitudes(), l, Split::full(3), 1, u);
    // Kronecker oracle: I (x) U (x) I.
    Matrix k = Matrix::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b)
          for (int bb = 0; bb < 2; ++bb) k(4 * a + 2 * b + c, 4 * a + 2 * bb + c) = u(b, bb);
    CHECK((got - k * psi.amplitudes()).norm() < 1e-12);
  }
}
