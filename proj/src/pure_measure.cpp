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

#include "schmidt/pure_measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace schmidt {

namespace {

// Fibers below this relative size are numerical noise for witness purposes.
constexpr double kWitnessTol = 1e-13;

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector term_tensor(const ProductTerm& t) {
  Vector v = t.vectors.front();
  for (std::size_t b = 1; b < t.vectors.size(); ++b) v = kron(v, t.vectors[b]);
  return t.alpha * v;
}

// Factor matrices (one column per term, norms carried by the columns).
struct Factors {
  std::vector<Matrix> a;
  int rank() const { return static_cast<int>(a.front().cols()); }
};

// Khatri-Rao product of all factors except `skip`, modes ascending.
Matrix khatri_rao(const Factors& f, int skip) {
  const int R = f.rank();
  Matrix k;
  bool first = true;
  for (int m = 0; m < static_cast<int>(f.a.size()); ++m) {
    if (m == skip) continue;
    const Matrix& am = f.a[static_cast<std::size_t>(m)];
    if (first) {
      k = am;
      first = false;
      continue;
    }
    Matrix next(k.rows() * am.rows(), R);
    for (int r = 0; r < R; ++r) next.col(r) = kron(k.col(r), am.col(r));
    k = std::move(next);
  }
  if (first) k = Matrix::Ones(1, R);
  return k;
}

double max_column_product(const Factors& f) {
  double best = 0.0;
  for (int r = 0; r < f.rank(); ++r) {
    double p = 1.0;
    for (const auto& a : f.a) p *= a.col(r).norm();
    best = std::max(best, p);
  }
  return best;
}

void rebalance(Factors& f) {
  const double modes = static_cast<double>(f.a.size());
  for (int r = 0; r < f.rank(); ++r) {
    double logsum = 0.0;
    bool zero = false;
    for (const auto& a : f.a) {
      const double n = a.col(r).norm();
      if (n == 0.0) zero = true;
      logsum += zero ? 0.0 : std::log(n);
    }
    if (zero) continue;
    const double g = std::exp(logsum / modes);
    for (auto& a : f.a) a.col(r) *= g / a.col(r).norm();
  }
}

struct AlsRun {
  double residual;
  Factors factors;
  bool aborted;
};

AlsRun als_run(const BlockTensor& t, Factors f, const FitOptions& opts) {
  const int modes = t.modes();
  std::vector<Matrix> unfold;
  for (int m = 0; m < modes; ++m) {
    const std::array<int, 1> rows{m};
    unfold.push_back(flatten(t, rows));
  }
  double residual = std::numeric_limits<double>::infinity();
  double checkpoint = residual;
  for (int it = 1; it <= opts.max_iters; ++it) {
    for (int m = 0; m < modes; ++m) {
      const Matrix k = khatri_rao(f, m);
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(k);
      f.a[static_cast<std::size_t>(m)] = cod.solve(unfold[static_cast<std::size_t>(m)].transpose()).transpose();
    }
    const int last = modes - 1;
    residual = (unfold[static_cast<std::size_t>(last)] -
                f.a[static_cast<std::size_t>(last)] * khatri_rao(f, last).transpose()).norm();
    rebalance(f);
    if (!std::isfinite(residual)) return {residual, std::move(f), true};
    if (residual < opts.eps_fit) break;
    if (max_column_product(f) > 10.0 * opts.norm_cap) return {residual, std::move(f), true};
    if (it % 250 == 0) {
      if (residual > 0.99 * checkpoint) break;
      checkpoint = residual;
    }
  }
  return {residual, std::move(f), false};
}

Factors seeded_factors(const BlockTensor& t, int R, bool from_svd, Rng& rng) {
  Factors f;
  for (int m = 0; m < t.modes(); ++m) {
    const int d = t.dims[static_cast<std::size_t>(m)];
    Matrix a = random_gaussian_matrix(d, R, rng);
    if (from_svd) {
      const std::array<int, 1> rows{m};
      Eigen::JacobiSVD<Matrix> svd(flatten(t, rows), Eigen::ComputeThinU);
      const Eigen::Index take = std::min<Eigen::Index>(R, svd.matrixU().cols());
      a.leftCols(take) = svd.matrixU().leftCols(take) + 0.1 * a.leftCols(take);
    }
    f.a.push_back(std::move(a));
  }
  return f;
}

// Concise form of a tensor: orthonormal bases per mode and the core over them.
struct Concise {
  BlockTensor core;
  std::vector<Matrix> bases;
};

Concise concise(const BlockTensor& t) {
  Concise c;
  c.core = t;
  for (int m = 0; m < t.modes(); ++m) {
    const std::array<int, 1> rows{m};
    c.bases.push_back(column_basis(flatten(t, rows), kWitnessTol));
    c.core = mode_product(c.core, m, c.bases.back().adjoint());
  }
  return c;
}

ProductDecomposition empty_decomposition(const PureState& psi, const Split& split) {
  return ProductDecomposition{split, std::vector<int>(psi.layout().dims().begin(), psi.layout().dims().end()), {}, 0.0};
}

// Builds terms from core factors mapped through the bases, then measures the
// residual against the state itself.
ProductDecomposition from_factors(const PureState& psi, const Split& split, const Concise& c, const Factors& f) {
  ProductDecomposition d = empty_decomposition(psi, split);
  for (int r = 0; r < f.rank(); ++r) {
    ProductTerm term{1.0, {}};
    bool zero = false;
    for (std::size_t m = 0; m < f.a.size(); ++m) {
      Vector v = c.bases[m] * f.a[m].col(r);
      const double n = v.norm();
      if (n == 0.0) {
        zero = true;
        break;
      }
      term.alpha *= n;
      term.vectors.push_back(v / n);
    }
    if (!zero) d.terms.push_back(std::move(term));
  }
  d.canonicalize();
  d.residual = (psi.amplitudes() - d.reassemble()).norm();
  return d;
}

double max_alpha(const ProductDecomposition& d) {
  double m = 0.0;
  for (const auto& t : d.terms) m = std::max(m, std::abs(t.alpha));
  return m;
}

// Rank-2 decomposition of a 2x2x2 core with nonzero hyperdeterminant, read
// off from the eigenvectors of the slice pencil.
std::optional<Factors> pencil_rank2(const BlockTensor& core, Rng& rng) {
  const Matrix x0 = flatten(slice(core, 0, 0), std::array<int, 1>{0});
  const Matrix x1 = flatten(slice(core, 0, 1), std::array<int, 1>{0});
  const Matrix g = random_gaussian_matrix(2, 2, rng);
  const Matrix fmat = g.inverse();
  const Matrix y0 = g(0, 0) * x0 + g(1, 0) * x1;
  const Matrix y1 = g(0, 1) * x0 + g(1, 1) * x1;
  Eigen::FullPivLU<Matrix> lu(y1);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::ComplexEigenSolver<Matrix> es(lu.solve(y0));
  const Matrix v = es.eigenvectors();
  Eigen::FullPivLU<Matrix> vlu(v);
  if (!vlu.isInvertible()) return std::nullopt;
  const Matrix vinv = vlu.inverse();
  const Matrix b = y1 * v;
  Factors f;
  f.a.assign(3, Matrix(2, 2));
  for (int r = 0; r < 2; ++r) {
    f.a[0].col(r) = es.eigenvalues()(r) * fmat.row(0).transpose() + fmat.row(1).transpose();
    f.a[1].col(r) = b.col(r);
    f.a[2].col(r) = vinv.row(r).transpose();
  }
  return f;
}

// Sum over the fibers along the largest mode; always exact.
ProductDecomposition fiber_witness(const PureState& psi, const Split& split, const Concise& c) {
  const BlockTensor& core = c.core;
  int big = 0;
  for (int m = 1; m < core.modes(); ++m)
    if (core.dims[static_cast<std::size_t>(m)] > core.dims[static_cast<std::size_t>(big)]) big = m;
  const std::array<int, 1> rows{big};
  const Matrix fib = flatten(core, rows);
  std::vector<int> rest;
  for (int m = 0; m < core.modes(); ++m)
    if (m != big) rest.push_back(m);
  ProductDecomposition d = empty_decomposition(psi, split);
  for (Eigen::Index col = 0; col < fib.cols(); ++col) {
    if (fib.col(col).norm() <= kWitnessTol) continue;
    ProductTerm term{1.0, std::vector<Vector>(static_cast<std::size_t>(core.modes()))};
    auto idx = static_cast<std::size_t>(col);
    for (std::size_t q = rest.size(); q-- > 0;) {
      const int m = rest[q];
      const auto dm = static_cast<std::size_t>(core.dims[static_cast<std::size_t>(m)]);
      term.vectors[static_cast<std::size_t>(m)] = c.bases[static_cast<std::size_t>(m)].col(static_cast<Eigen::Index>(idx % dm));
      idx /= dm;
    }
    const Vector v = c.bases[static_cast<std::size_t>(big)] * fib.col(col);
    term.alpha = v.norm();
    term.vectors[static_cast<std::size_t>(big)] = v / v.norm();
    d.terms.push_back(std::move(term));
  }
  d.canonicalize();
  d.residual = (psi.amplitudes() - d.reassemble()).norm();
  return d;
}

int concise_cap(const Concise& c) {
  long long prod = 1;
  int big = 1;
  for (int d : c.core.dims) {
    prod *= d;
    big = std::max(big, d);
  }
  return static_cast<int>(prod / big);
}

}  // namespace

Vector ProductDecomposition::reassemble() const {
  const PartyLayout lay = layout();
  BlockTensor t{split.block_dims(lay), Vector::Zero(static_cast<Eigen::Index>(lay.total()))};
  for (const auto& term : terms) t.data += term_tensor(term);
  return ungroup(t, lay, split);
}

void ProductDecomposition::canonicalize() {
  for (auto& term : terms) {
    for (auto& v : term.vectors) {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
      const cplx x = v(best);
      if (std::abs(x) == 0.0) continue;
      const cplx phase = x / std::abs(x);
      v /= phase;
      v(best) = std::abs(v(best));
      term.alpha *= phase;
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const ProductTerm& a, const ProductTerm& b) { return std::abs(a.alpha) > std::abs(b.alpha); });
}

double MeasureValue::lo() const { return std::log2(static_cast<double>(rank_lo)); }
double MeasureValue::hi() const { return std::log2(static_cast<double>(rank_hi)); }

std::string log2_form(int rank) {
  if (rank >= 1 && (rank & (rank - 1)) == 0) {
    int e = 0;
    while ((1 << e) < rank) ++e;
    return std::to_string(e);
  }
  return "log2(" + std::to_string(rank) + ")";
}

std::string MeasureValue::rank_form() const {
  if (rank_lo == rank_hi) return log2_form(rank_lo);
  return "[" + log2_form(rank_lo) + ", " + log2_form(rank_hi) + "]";
}

int schmidt_rank(const PureState& psi, const Split& split, double tol) {
  if (split.size() != 2) throw DomainError("schmidt_rank needs a 2-split");
  return numerical_rank(matricize(psi, split, std::array<int, 1>{0}), tol);
}

int flattening_lower_bound(const PureState& psi, const Split& split, double tol) {
  return flattening_rank(group_by_split(psi, split), tol);
}

RankLowerBound rank_lower_bound(const PureState& psi, const Split& split, double tol) {
  return tensor_rank_lower_bound(group_by_split(psi, split), tol);
}

FitResult als_fit(const PureState& psi, const Split& split, int R, const FitOptions& opts) {
  if (R < 1) throw DomainError("als_fit needs R >= 1");
  const Concise c = concise(group_by_split(psi, split));
  std::optional<FitResult> best;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(opts.seed + 7919u * static_cast<std::uint64_t>(R) + static_cast<std::uint64_t>(restart));
    Factors init;
    std::optional<Factors> analytic;
    if (restart == 0 && R == 2 && c.core.dims == std::vector<int>{2, 2, 2}) analytic = pencil_rank2(c.core, rng);
    AlsRun run = analytic ? AlsRun{0.0, *analytic, false}
                          : als_run(c.core, seeded_factors(c.core, R, restart == 0, rng), opts);
    if (run.aborted && !std::isfinite(run.residual)) continue;
    ProductDecomposition d = from_factors(psi, split, c, run.factors);
    FitResult fr{d.residual, d, max_alpha(d) > opts.norm_cap};
    const bool better = !best || (fr.accepted(opts) && !best->accepted(opts)) ||
                        (fr.accepted(opts) == best->accepted(opts) && fr.residual < best->residual);
    if (better) best = std::move(fr);
    if (best->accepted(opts)) break;
  }
  if (!best) return FitResult{std::numeric_limits<double>::infinity(), empty_decomposition(psi, split), true};
  return *best;
}

RankBracket rank_bracket(const PureState& psi, const Split& split, const FitOptions& opts) {
  RankBracket br;
  const BlockTensor t = group_by_split(psi, split);
  const Concise c = concise(t);
  if (split.size() == 2) {
    const Matrix m = flatten(t, std::array<int, 1>{0});
    br.lo = br.hi = schmidt_rank(psi, split, opts.rank_tol);
    br.lower_certificate = "matrix";
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ProductDecomposition d = empty_decomposition(psi, split);
    for (int r = 0; r < br.hi; ++r)
      d.terms.push_back({svd.singularValues()(r), {svd.matrixU().col(r), svd.matrixV().col(r).conjugate()}});
    d.canonicalize();
    d.residual = (psi.amplitudes() - d.reassemble()).norm();
    br.witness_hi = std::move(d);
    br.exact = true;
    return br;
  }
  const RankLowerBound lb = tensor_rank_lower_bound(t, opts.rank_tol);
  br.lo = std::max(1, lb.value);
  br.lower_certificate = lb.method;
  const int cap = concise_cap(c);
  const int top = std::min(br.lo + opts.sweep_width - 1, cap - 1);
  for (int R = br.lo; R <= top; ++R) {
    FitResult fr = als_fit(psi, split, R, opts);
    if (fr.accepted(opts)) {
      br.hi = fr.decomposition.size();
      br.witness_hi = std::move(fr.decomposition);
      break;
    }
  }
  if (!br.witness_hi) {
    ProductDecomposition d = fiber_witness(psi, split, c);
    br.hi = d.size();
    br.witness_hi = std::move(d);
  }
  // A fit may use fewer terms than requested; the lower bound still holds.
  br.hi = std::max(br.hi, br.lo);
  br.exact = br.lo == br.hi;
  return br;
}

MeasureValue schmidt_measure_pure(const PureState& psi, const Split& split, const FitOptions& opts) {
  const RankBracket b = rank_bracket(psi, split, opts);
  return MeasureValue{b.lo, b.hi, b.exact};
}

}  // namespace schmidt
