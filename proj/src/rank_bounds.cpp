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

#include "schmidt/rank_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace schmidt {

Compression compress(const BlockTensor& t, double tol) {
  Compression c;
  BlockTensor core = t;
  for (int b = 0; b < t.modes(); ++b) {
    const std::array<int, 1> rows{b};
    c.bases.push_back(column_basis(flatten(t, rows), tol));
    core = mode_product(core, b, c.bases.back().adjoint());
    if (c.bases.back().cols() > 1) c.kept.push_back(b);
  }
  c.core = squeeze(core);
  return c;
}

int flattening_rank(const BlockTensor& t, double tol) {
  if (t.modes() < 2) return t.data.norm() > 0.0 ? 1 : 0;
  int best = 0;
  for (const auto& s : block_bipartitions(t.modes())) best = std::max(best, numerical_rank(flatten(t, s), tol));
  return best;
}

cplx hyperdeterminant(const BlockTensor& t) {
  if (t.dims != std::vector<int>{2, 2, 2}) throw DomainError("hyperdeterminant needs a 2x2x2 tensor");
  auto a = [&](int i, int j, int k) { return t.data(i * 4 + j * 2 + k); };
  const cplx a000 = a(0, 0, 0), a001 = a(0, 0, 1), a010 = a(0, 1, 0), a011 = a(0, 1, 1);
  const cplx a100 = a(1, 0, 0), a101 = a(1, 0, 1), a110 = a(1, 1, 0), a111 = a(1, 1, 1);
  cplx d = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
           a100 * a100 * a011 * a011;
  d -= 2.0 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
              a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101);
  d += 4.0 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111);
  return d;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs, double rel_tol) {
  double scale = 0.0;
  for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  std::size_t n = coeffs.size();
  while (n > 0 && std::abs(coeffs[n - 1]) <= rel_tol * scale) --n;
  if (n <= 1) return {};
  const auto deg = static_cast<Eigen::Index>(n - 1);
  Matrix comp = Matrix::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[n - 1];
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

namespace {

BlockTensor combine(const BlockTensor& x0, const BlockTensor& x1, cplx c) {
  return BlockTensor{x0.dims, x0.data + c * x1.data};
}

RankLowerBound basic_bound(const BlockTensor& t, double tol) {
  if (t.data.norm() == 0.0) return {0, "zero"};
  const Compression c = compress(t, tol);
  const BlockTensor& core = c.core;
  if (core.modes() == 0) return {1, "product"};
  if (core.modes() <= 2) return {flattening_rank(core, tol), "matrix"};
  RankLowerBound b{flattening_rank(core, tol), "flattening"};
  if (core.dims == std::vector<int>{2, 2, 2}) {
    const double n2 = core.data.squaredNorm();
    const bool degenerate = std::abs(hyperdeterminant(core)) <= kHyperdetZeroTol * n2 * n2;
    if (degenerate && b.value < 3) b = {3, "hyperdeterminant"};
  }
  return b;
}

// Coefficients of a polynomial of degree <= deg from its values on the
// (deg+1)-th roots of unity.
template <typename F>
std::vector<cplx> interpolate_on_circle(int deg, F&& f) {
  const int n = deg + 1;
  std::vector<cplx> vals(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) vals[static_cast<std::size_t>(k)] = f(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
  std::vector<cplx> coeffs(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) s += vals[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * k * m / n);
    coeffs[static_cast<std::size_t>(m)] = s / static_cast<double>(n);
  }
  return coeffs;
}

// Points c of the pencil X0 + c X1 where basic_bound may differ from its
// generic value.
std::vector<cplx> special_points(const BlockTensor& x0, const BlockTensor& x1, double tol, Rng& rng) {
  std::vector<cplx> pts;
  const int k = x0.modes();
  std::vector<std::vector<int>> parts = block_bipartitions(k);
  if (k == 1) parts.push_back({0});
  for (const auto& s : parts) {
    const Matrix m0 = flatten(x0, s);
    const Matrix m1 = flatten(x1, s);
    const Vector probe = random_gaussian_vector(2, rng);
    const int g = std::max(numerical_rank(m0 + probe(0) * m1, tol), numerical_rank(m0 + probe(1) * m1, tol));
    if (g == 0) continue;
    const Matrix p = random_gaussian_matrix(g, m0.rows(), rng);
    const Matrix q = random_gaussian_matrix(m0.cols(), g, rng);
    const Matrix pm0q = p * m0 * q;
    const Matrix pm1q = p * m1 * q;
    auto coeffs = interpolate_on_circle(g, [&](cplx c) { return (pm0q + c * pm1q).determinant(); });
    for (const cplx& r : polynomial_roots(coeffs)) pts.push_back(r);
  }
  if (x0.dims == std::vector<int>{2, 2, 2}) {
    auto coeffs = interpolate_on_circle(4, [&](cplx c) { return hyperdeterminant(combine(x0, x1, c)); });
    for (const cplx& r : polynomial_roots(coeffs, 1e-9)) pts.push_back(r);
  }
  std::vector<cplx> unique;
  for (const cplx& p : pts) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const cplx& u) {
      return std::abs(u - p) <= 1e-6 * std::max(1.0, std::abs(p));
    });
    if (!dup) unique.push_back(p);
  }
  return unique;
}

int substitution_bound(const BlockTensor& core, int mode, double tol) {
  BlockTensor x0 = slice(core, mode, 0);
  BlockTensor x1 = slice(core, mode, 1);
  x0.data.normalize();
  x1.data.normalize();
  Rng rng(0x5b5717u + static_cast<unsigned>(mode));
  const double loose = std::max(tol, 1e-6);
  const Vector g = random_gaussian_vector(1, rng);
  const int generic = basic_bound(combine(x0, x1, g(0)), tol).value;
  std::vector<int> special;
  for (const cplx& c : special_points(x0, x1, tol, rng)) special.push_back(basic_bound(combine(x0, x1, c), loose).value);
  special.push_back(basic_bound(x1, loose).value);  // the point at infinity

  // One point of the projective line may be excluded: the decomposition has
  // at least two non-parallel vectors in this mode.
  const int lowest = std::min(generic, *std::min_element(special.begin(), special.end()));
  int value = lowest;
  if (generic > lowest && std::count(special.begin(), special.end(), lowest) == 1) {
    value = generic;
    for (int v : special)
      if (v > lowest) value = std::min(value, v);
  }
  return 1 + value;
}

}  // namespace

RankLowerBound tensor_rank_lower_bound(const BlockTensor& t, double tol) {
  RankLowerBound b = basic_bound(t, tol);
  if (b.value == 0) return b;
  const Compression c = compress(t, tol);
  if (c.core.modes() < 3) return b;
  for (int m = 0; m < c.core.modes(); ++m) {
    if (c.core.dims[static_cast<std::size_t>(m)] != 2) continue;
    const int s = substitution_bound(c.core, m, tol);
    if (s > b.value) b = {s, "substitution"};
  }
  return b;
}

}  // namespace schmidt
