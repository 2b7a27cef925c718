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

#include "schmidt/mixed_measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "schmidt/sdp.hpp"

namespace schmidt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kRangeTol = 1e-12;
constexpr double kProductTol = 1e-10;
constexpr double kCloseTol = 1e-6;
// The partial transposes are only required to exceed -eps * I with eps of
// this order, which keeps the relaxation strictly feasible for rank-deficient
// states.
constexpr double kPptSlack = 1e-9;

// Eigenvectors spanning the range of rho, eigenvalues descending.
struct Range {
  Matrix basis;
  VectorXd eig;
  int rank() const { return static_cast<int>(eig.size()); }
  Matrix lambda() const { return eig.cast<cplx>().asDiagonal(); }
};

Range range_of(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  const VectorXd& ev = es.eigenvalues();
  const double top = std::max(ev.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = ev.size(); i-- > 0;)
    if (ev(i) > kRangeTol * top) keep.push_back(i);
  Range r{Matrix(rho.rows(), static_cast<Eigen::Index>(keep.size())), VectorXd(static_cast<Eigen::Index>(keep.size()))};
  for (std::size_t j = 0; j < keep.size(); ++j) {
    r.basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
    r.eig(static_cast<Eigen::Index>(j)) = ev(keep[j]);
  }
  return r;
}

Vector grouped(const Vector& v, const PartyLayout& layout, const Split& split) {
  return group_by_split(v, layout, split).data;
}

// Positive-partial-transpose relaxation of the largest split-product weight,
// restricted to the range of rho: sigma = V Y V^dagger.
struct PptProgram {
  Range range;
  Matrix Y;
  double bound = 1.0;
};

PptProgram solve_ppt_once(const DensityOperator& rho, const Split& split, double eps, bool& converged) {
  PptProgram out{range_of(rho.matrix()), Matrix(), 1.0};
  const int r = out.range.rank();
  const PartyLayout& layout = rho.layout();
  const std::vector<int> bdims = split.block_dims(layout);
  Matrix vg(out.range.basis.rows(), r);
  for (int j = 0; j < r; ++j) vg.col(j) = grouped(out.range.basis.col(j), layout, split);
  const auto herm = hermitian_basis(r);
  const auto subsets = block_bipartitions(split.size());
  const int m = static_cast<int>(herm.size());

  SdpProblem p;
  p.b = VectorXd::Zero(m);
  const auto nb = 2 + subsets.size();
  p.C.assign(nb, MatrixXd());
  p.A.assign(nb, std::vector<MatrixXd>(static_cast<std::size_t>(m)));
  p.C[0] = MatrixXd::Zero(2 * r, 2 * r);
  p.C[1] = real_embedding(out.range.lambda());
  for (std::size_t s = 0; s < subsets.size(); ++s)
    p.C[2 + s] = eps * MatrixXd::Identity(2 * vg.rows(), 2 * vg.rows());
  for (int i = 0; i < m; ++i) {
    const auto I = static_cast<std::size_t>(i);
    p.b(i) = herm[I].trace().real();
    const MatrixXd e = real_embedding(herm[I]);
    p.A[0][I] = -e;
    p.A[1][I] = e;
    const Matrix lifted = vg * herm[I] * vg.adjoint();
    for (std::size_t s = 0; s < subsets.size(); ++s)
      p.A[2 + s][I] = -real_embedding(partial_transpose(lifted, bdims, subsets[s]));
  }
  const SdpSolution sol = solve_sdp(p);
  converged = sol.converged;

  out.Y = Matrix::Zero(r, r);
  for (int i = 0; i < m; ++i) out.Y += sol.y(i) * herm[static_cast<std::size_t>(i)];

  // Weak duality: for any W_s >= 0 and Z >= 0 with Z >= M = I + sum_s
  // V^dagger W_s^Gamma V, the weight is at most tr(Lambda Z) + slack sum_s
  // tr W_s. Z is the solver's block corrected upwards.
  Matrix m_op = Matrix::Identity(r, r);
  double slack = 0.0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const Matrix w = positive_part(2.0 * complex_from_embedding(sol.X[2 + s]));
    m_op += vg.adjoint() * partial_transpose(w, bdims, subsets[s]) * vg;
    slack += eps * w.trace().real();
  }
  const Matrix z1 = positive_part(2.0 * complex_from_embedding(sol.X[1]));
  const Matrix z = z1 + positive_part(m_op - z1);
  const double bound = (out.range.lambda() * z).trace().real() + slack;
  out.bound = std::clamp(bound, 0.0, 1.0);
  return out;
}

// Every attempt gives a valid bound; other slacks are tried when the solver
// stalls and the smallest bound is kept.
PptProgram solve_ppt(const DensityOperator& rho, const Split& split) {
  std::optional<PptProgram> best;
  for (double eps : {kPptSlack, 10.0 * kPptSlack, 0.1 * kPptSlack}) {
    bool converged = false;
    PptProgram p = solve_ppt_once(rho, split, eps, converged);
    if (!best || p.bound < best->bound) best = std::move(p);
    if (converged) break;
  }
  return *best;
}

int certified_rank(const Vector& v, const PartyLayout& layout, const Split& split, const FitOptions& fit) {
  return rank_bracket(PureState(layout, v), split, fit).hi;
}

// Weighted unnormalized candidates turned into an ensemble with its value.
struct Scored {
  std::vector<double> weights;
  std::vector<Vector> states;
  std::vector<int> ranks;
  double value = 0.0;
};

Scored score(const std::vector<double>& w, const std::vector<Vector>& v, const PartyLayout& layout,
             const Split& split, const FitOptions& fit) {
  Scored s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 1e-15) continue;
    s.weights.push_back(w[i]);
    s.states.push_back(v[i].normalized());
    s.ranks.push_back(certified_rank(s.states.back(), layout, split, fit));
  }
  double total = 0.0;
  for (double x : s.weights) total += x;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    s.weights[i] /= total;
    s.value += s.weights[i] * std::log2(static_cast<double>(s.ranks[i]));
  }
  return s;
}

Ensemble to_ensemble(const Scored& s, const PartyLayout& layout) {
  std::vector<PureState> states;
  for (const auto& v : s.states) states.emplace_back(layout, v);
  return Ensemble(s.weights, std::move(states));
}

// Members of an exact ensemble: weighted vectors plus the eigen-ensemble of a
// PSD remainder, all in range coordinates mapped back through the basis.
void append_remainder(const Matrix& rem, const Range& range, std::vector<double>& w, std::vector<Vector>& v) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rem + rem.adjoint()));
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    if (es.eigenvalues()(i) <= 1e-14) continue;
    w.push_back(es.eigenvalues()(i));
    v.push_back(range.basis * es.eigenvectors().col(i));
  }
}

// Best rank-1 approximation of a tensor by higher-order power iteration.
Vector rank1_approx(const BlockTensor& t, std::vector<Vector>& factors) {
  const int k = t.modes();
  if (factors.size() != static_cast<std::size_t>(k)) {
    factors.clear();
    for (int m = 0; m < k; ++m) {
      Eigen::JacobiSVD<Matrix> svd(flatten(t, std::array<int, 1>{m}), Eigen::ComputeThinU);
      factors.push_back(svd.matrixU().col(0));
    }
  }
  const int sweeps = k == 2 ? 1 : 8;
  for (int it = 0; it < sweeps; ++it) {
    for (int m = 0; m < k; ++m) {
      Vector kr = Vector::Ones(1);
      for (int q = 0; q < k; ++q) {
        if (q == m) continue;
        const Vector c = factors[static_cast<std::size_t>(q)].conjugate();
        Vector next(kr.size() * c.size());
        for (Eigen::Index i = 0; i < kr.size(); ++i) next.segment(i * c.size(), c.size()) = kr(i) * c;
        kr = std::move(next);
      }
      Vector f = flatten(t, std::array<int, 1>{m}) * kr;
      const double n = f.norm();
      if (n == 0.0) return Vector::Zero(t.data.size());
      factors[static_cast<std::size_t>(m)] = f / n;
    }
  }
  Vector out = factors[0];
  for (int m = 1; m < k; ++m) {
    const Vector& c = factors[static_cast<std::size_t>(m)];
    Vector next(out.size() * c.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * c.size(), c.size()) = out(i) * c;
    out = std::move(next);
  }
  return out * out.dot(t.data);  // dot conjugates the first argument
}

Vector best_product(const Vector& x, const PartyLayout& layout, const Split& split, std::vector<Vector>& factors) {
  const BlockTensor t = group_by_split(x, layout, split);
  if (split.size() == 2) {
    factors.clear();
    Eigen::JacobiSVD<Matrix> svd(flatten(t, std::array<int, 1>{0}), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector u = svd.matrixU().col(0);
    const Vector v = svd.matrixV().col(0).conjugate();
    Vector out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = svd.singularValues()(0) * u(i) * v;
    return ungroup(BlockTensor{t.dims, out}, layout, split);
  }
  return ungroup(BlockTensor{t.dims, rank1_approx(t, factors)}, layout, split);
}

double max_eig(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Matrix inv_sqrt(const VectorXd& eig) {
  return eig.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal();
}

std::vector<double> max_weights_in_range(const Range& range, const std::vector<Vector>& coords) {
  const int r = range.rank();
  const int n = static_cast<int>(coords.size());
  if (n == 0) return {};
  SdpProblem p;
  p.b = VectorXd::Ones(n);
  p.C.push_back(real_embedding(range.lambda()));
  p.A.emplace_back();
  for (int i = 0; i < n; ++i) p.A[0].push_back(real_embedding(coords[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(i)].adjoint()));
  for (int i = 0; i < n; ++i) {
    p.C.push_back(MatrixXd::Zero(1, 1));
    std::vector<MatrixXd> a(static_cast<std::size_t>(n));
    a[static_cast<std::size_t>(i)] = -MatrixXd::Ones(1, 1);
    p.A.push_back(std::move(a));
  }
  const SdpSolution sol = solve_sdp(p);
  std::vector<double> w(static_cast<std::size_t>(n));
  Matrix s = Matrix::Zero(r, r);
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = std::max(0.0, sol.y(i));
    s += w[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(i)].adjoint();
  }
  const Matrix is = inv_sqrt(range.eig);
  const double top = max_eig(is * s * is);
  if (top <= 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
  for (double& x : w) x /= top;
  return w;
}

std::vector<Vector> to_coords(const Range& range, const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) {
    Vector u = range.basis.adjoint() * v;
    const double n = u.norm();
    out.push_back(n > 0.0 ? Vector(u / n) : u);
  }
  return out;
}

// Ensemble made of product vectors at maximal weights plus the remainder.
Scored product_ensemble(const Range& range, const std::vector<Vector>& products, const PartyLayout& layout,
                        const Split& split, const FitOptions& fit) {
  const auto coords = to_coords(range, products);
  const auto w = max_weights_in_range(range, coords);
  std::vector<double> ws;
  std::vector<Vector> vs;
  Matrix rem = range.lambda();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (w[i] <= 1e-15) continue;
    ws.push_back(w[i]);
    vs.push_back(range.basis * coords[i]);
    rem -= w[i] * coords[i] * coords[i].adjoint();
  }
  append_remainder(rem, range, ws, vs);
  return score(ws, vs, layout, split, fit);
}

// Pool decomposition: min sum p_i m_i subject to sum p_i u_i u_i^dagger =
// Lambda, then repaired to exact feasibility.
std::optional<Scored> pool_ensemble(const Range& range, const std::vector<Vector>& pool, const PartyLayout& layout,
                                    const Split& split, const FitOptions& fit) {
  const int r = range.rank();
  const auto herm = hermitian_basis(r);
  const int m = static_cast<int>(herm.size());
  std::vector<double> cost;
  for (const auto& u : pool) cost.push_back(std::log2(static_cast<double>(certified_rank(range.basis * u, layout, split, fit))));
  SdpProblem p;
  p.b = VectorXd(m);
  const Matrix lam = range.lambda();
  for (int k = 0; k < m; ++k) p.b(k) = (herm[static_cast<std::size_t>(k)] * lam).trace().real();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    p.C.push_back(MatrixXd::Constant(1, 1, cost[i]));
    std::vector<MatrixXd> a;
    for (int k = 0; k < m; ++k)
      a.push_back(MatrixXd::Constant(1, 1, pool[i].dot(herm[static_cast<std::size_t>(k)] * pool[i]).real()));
    p.A.push_back(std::move(a));
  }
  const SdpSolution sol = solve_sdp(p);
  std::vector<double> w;
  Matrix delta = lam;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    w.push_back(std::max(0.0, sol.X[i](0, 0)));
    delta -= w.back() * pool[i] * pool[i].adjoint();
  }
  for (double d = 0.0; d <= 1.0; d = d == 0.0 ? 1e-12 : d * 10.0) {
    const Matrix rem = d * lam + (1.0 - d) * delta;
    if (min_eigenvalue(rem) < -1e-14) continue;
    std::vector<double> ws;
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      ws.push_back((1.0 - d) * w[i]);
      vs.push_back(range.basis * pool[i]);
    }
    append_remainder(rem, range, ws, vs);
    return score(ws, vs, layout, split, fit);
  }
  return std::nullopt;
}

MixedMeasureValue from_scored(const Scored& s, const PartyLayout& layout) {
  MixedMeasureValue v;
  v.upper = s.value;
  v.witness = to_ensemble(s, layout);
  v.witness_ranks = s.ranks;
  return v;
}

bool is_product(const Vector& v, const PartyLayout& layout, const Split& split) {
  return flattening_rank(group_by_split(v, layout, split), kRankTol) <= 1;
}

}  // namespace

double roof_upper_bound(const Ensemble& ensemble, const Split& split, const FitOptions& opts) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    total += ensemble.weights()[i] * std::log2(static_cast<double>(rank_bracket(ensemble.states()[i], split, opts).hi));
  return total;
}

std::vector<Vector> product_vectors_in_range(const Matrix& basis, const PartyLayout& layout, const Split& split,
                                             int starts, Rng& rng) {
  std::vector<Vector> found;
  if (basis.cols() == 0) return found;
  for (int s = 0; s < starts; ++s) {
    Vector x = basis * random_gaussian_vector(basis.cols(), rng);
    x.normalize();
    std::vector<Vector> factors;
    double dist = 1.0;
    Vector p;
    for (int it = 0; it < 4000; ++it) {
      p = best_product(x, layout, split, factors);
      const double pn = p.norm();
      if (pn == 0.0) break;
      p /= pn;
      const Vector proj = basis * (basis.adjoint() * p);
      const double next = (p - proj).norm();
      const double prev = dist;
      dist = next;
      if (dist < 1e-13) break;
      x = proj.normalized();
      if (it > 200 && dist > 0.999 * prev) break;
    }
    if (!(dist <= kProductTol)) continue;
    Vector v = basis * (basis.adjoint() * p);
    v.normalize();
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Vector& f) {
      return std::abs(f.dot(v)) > 1.0 - 1e-8;
    });
    if (!dup) found.push_back(v);
  }
  return found;
}

std::vector<double> max_product_weights(const DensityOperator& rho, const std::vector<Vector>& vectors) {
  const Range range = range_of(rho.matrix());
  return max_weights_in_range(range, to_coords(range, vectors));
}

std::vector<WeightedState> two_qubit_product_decomposition(const Matrix& sigma) {
  if (sigma.rows() != 4) throw DomainError("two-qubit decomposition needs a 4x4 operator");
  const PartyLayout layout({2, 2});
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.adjoint()));
  Matrix v = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) > 0.0) v.col(i) = std::sqrt(es.eigenvalues()(i)) * es.eigenvectors().col(i);

  Matrix flip = Matrix::Zero(4, 4);
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;
  Matrix tau = v.adjoint() * flip * v.conjugate();
  tau = 0.5 * (tau + tau.transpose());

  // Takagi factorization tau = U diag(l) U^T from the real symmetric image.
  MatrixXd big(8, 8);
  big << tau.real(), tau.imag(), tau.imag(), -tau.real();
  Eigen::SelfAdjointEigenSolver<MatrixXd> bs(big);
  const double scale = std::max(1e-300, bs.eigenvalues().cwiseAbs().maxCoeff());
  Matrix u(4, 4);
  VectorXd l = VectorXd::Zero(4);
  int filled = 0;
  for (int i = 7; i >= 4; --i) {
    if (bs.eigenvalues()(i) <= 1e-12 * scale) break;
    const VectorXd e = bs.eigenvectors().col(i);
    u.col(filled) = (e.head(4).cast<cplx>() + cplx(0.0, 1.0) * e.tail(4).cast<cplx>()).normalized();
    l(filled) = bs.eigenvalues()(i);
    ++filled;
  }
  if (filled < 4) {
    Eigen::JacobiSVD<Matrix> svd(tau, Eigen::ComputeFullV);
    for (int j = filled; j < 4; ++j) u.col(j) = svd.matrixV().col(j).conjugate();
  }
  const Matrix x = v * u;

  // Phases closing the triangle l0 + l1 e^{i a} + (l2 + l3) e^{i b} = 0.
  const double a = l(0), b = l(1), c = l(2) + l(3);
  double phi2 = std::numbers::pi, phi3 = 0.0;
  if (a > 0.0) {
    if (b > 0.0) {
      const double cs = std::clamp((c * c - a * a - b * b) / (2.0 * a * b), -1.0, 1.0);
      phi2 = std::acos(cs);
    }
    const cplx rest = -(a + b * std::polar(1.0, phi2));
    phi3 = std::abs(rest) > 0.0 ? std::arg(rest) : 0.0;
  }
  const std::array<double, 4> theta{0.0, phi2 / 2.0, phi3 / 2.0, phi3 / 2.0};
  const int had[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};

  std::vector<WeightedState> out;
  for (int k = 0; k < 4; ++k) {
    Vector y = Vector::Zero(4);
    for (int j = 0; j < 4; ++j) y += 0.5 * static_cast<double>(had[k][j]) * std::polar(1.0, theta[static_cast<std::size_t>(j)]) * x.col(j);
    const double w = y.squaredNorm();
    if (w <= 1e-15) continue;
    Matrix m(2, 2);
    m << y(0), y(1), y(2), y(3);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector p = svd.matrixU().col(0);
    const Vector q = svd.matrixV().col(0).conjugate();
    Vector prod(4);
    prod << p(0) * q(0), p(0) * q(1), p(1) * q(0), p(1) * q(1);
    out.push_back({w, PureState(layout, prod)});
  }
  return out;
}

std::string to_string(PptVerdict v) {
  switch (v) {
    case PptVerdict::separable: return "separable";
    case PptVerdict::entangled: return "entangled";
    case PptVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PptVerdict ppt_check(const DensityOperator& rho, const Split& split) {
  if (split.size() != 2) throw DomainError("ppt_check needs a 2-split");
  const auto dims = split.block_dims(rho.layout());
  const Matrix g = group_operator(rho.matrix(), rho.layout(), split);
  const std::array<int, 1> second{1};
  if (min_eigenvalue(partial_transpose(g, dims, second)) < -1e-10) return PptVerdict::entangled;
  const int lo = std::min(dims[0], dims[1]);
  const int hi = std::max(dims[0], dims[1]);
  if (lo == 2 && hi <= 3) return PptVerdict::separable;
  return PptVerdict::inconclusive;
}

double separable_weight_bound(const DensityOperator& rho, const Split& split) {
  return solve_ppt(rho, split).bound;
}

BsaResult bsa(const DensityOperator& rho, const Split& split, const MixedOptions& opts) {
  if (split.size() != 2) throw DomainError("bsa needs a 2-split");
  const PartyLayout& layout = rho.layout();
  BsaResult res;
  const Range range = range_of(rho.matrix());
  if (range.rank() == 1) {
    const Vector psi = range.basis.col(0);
    if (is_product(psi, layout, split)) {
      res.s = res.s_upper = 1.0;
      res.separable_part.push_back({1.0, PureState(layout, psi)});
    } else {
      res.s = res.s_upper = 0.0;
      res.remainder = rho;
    }
    res.certified_feasible = true;
    return res;
  }

  const PptProgram ppt = solve_ppt(rho, split);
  res.s_upper = ppt.bound;
  const auto dims = split.block_dims(layout);
  Matrix best_sep = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());

  // Two qubits: a PPT operator is separable, so a repaired solution of the
  // relaxation decomposes into product states.
  if (dims == std::vector<int>{2, 2} && range.rank() == 4) {
    const Matrix sigma_star = range.basis * ppt.Y * range.basis.adjoint();
    const Matrix interior = 0.5 * range.eig.minCoeff() * Matrix::Identity(4, 4);
    const Matrix g = group_operator(rho.matrix(), layout, split);
    for (double d = 0.0; d <= 1.0; d = d == 0.0 ? 1e-12 : d * 10.0) {
      const Matrix sigma = (1.0 - d) * sigma_star + d * interior;
      const Matrix sg = group_operator(sigma, layout, split);
      if (min_eigenvalue(sg) < 0.0 || min_eigenvalue(g - sg) < 0.0 ||
          min_eigenvalue(partial_transpose(sg, dims, std::array<int, 1>{1})) < 0.0)
        continue;
      auto parts = two_qubit_product_decomposition(sg);
      Matrix sep = Matrix::Zero(4, 4);
      for (auto& p : parts) {
        p.state = PureState(layout, ungroup(BlockTensor{dims, p.state.amplitudes()}, layout, split));
        sep += p.weight * p.state.projector();
      }
      if (min_eigenvalue(rho.matrix() - sep) < -1e-9) break;
      double s = 0.0;
      for (const auto& p : parts) s += p.weight;
      res.s = s;
      res.separable_part = std::move(parts);
      best_sep = sep;
      break;
    }
  }

  Rng rng(opts.seed);
  const auto products = product_vectors_in_range(range.basis, layout, split, opts.product_starts, rng);
  const auto w = max_weights_in_range(range, to_coords(range, products));
  double s = 0.0;
  for (double x : w) s += x;
  if (s > res.s + 1e-12) {
    res.s = s;
    res.separable_part.clear();
    best_sep.setZero();
    for (std::size_t i = 0; i < products.size(); ++i) {
      if (w[i] <= 1e-15) continue;
      res.separable_part.push_back({w[i], PureState(layout, products[i])});
      best_sep += w[i] * res.separable_part.back().state.projector();
    }
  }
  res.s = std::min(res.s, 1.0);
  res.s_upper = std::max(res.s_upper, res.s);
  if (1.0 - res.s > 1e-9) {
    try {
      res.remainder = DensityOperator::normalized(layout, rho.matrix() - best_sep);
    } catch (const DomainError&) {
      res.remainder.reset();
    }
  }
  res.certified_feasible = res.s_upper - res.s <= kCloseTol;
  return res;
}

MixedMeasureValue two_qubit_measure(const DensityOperator& rho, const MixedOptions& opts) {
  const auto d = rho.layout().dims();
  if (d.size() != 2 || d[0] != 2 || d[1] != 2) throw DomainError("two_qubit_measure needs a 2x2 system");
  const Split split = Split::full(2);
  const BsaResult b = bsa(rho, split, opts);
  std::vector<double> ws;
  std::vector<Vector> vs;
  for (const auto& p : b.separable_part) {
    ws.push_back(p.weight);
    vs.push_back(p.state.amplitudes());
  }
  if (b.remainder) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.remainder->matrix());
    for (Eigen::Index i = 3; i >= 0; --i) {
      const double e = es.eigenvalues()(i) * (1.0 - b.s);
      if (e <= 1e-15) continue;
      ws.push_back(e);
      vs.push_back(es.eigenvectors().col(i));
    }
  }
  const Scored s = score(ws, vs, rho.layout(), split, opts.fit);
  MixedMeasureValue v = from_scored(s, rho.layout());
  v.lower = std::max(0.0, 1.0 - b.s_upper);
  v.upper = std::max(v.upper, v.lower);
  v.exact = b.certified_feasible && v.upper - v.lower <= kCloseTol;
  return v;
}

double werner_measure(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("Werner parameter must lie in [0, 1]");
  return lambda > 1.0 / 3.0 ? 1.5 * lambda - 0.5 : 0.0;
}

MixedMeasureValue ensemble_search(const DensityOperator& rho, const Split& split, const MixedOptions& opts,
                                  const std::vector<Ensemble>& seeds, double target) {
  const PartyLayout& layout = rho.layout();
  const Range range = range_of(rho.matrix());
  std::optional<Scored> best;
  auto consider = [&](Scored s) {
    if (!best || s.value < best->value - 1e-12) best = std::move(s);
    return best->value <= target + 1e-9;
  };
  auto finish = [&]() { return from_scored(*best, layout); };

  std::vector<double> ew(range.eig.data(), range.eig.data() + range.eig.size());
  std::vector<Vector> ev;
  for (int i = 0; i < range.rank(); ++i) ev.push_back(range.basis.col(i));
  if (consider(score(ew, ev, layout, split, opts.fit)) || range.rank() == 1) return finish();

  std::vector<Vector> pool;
  for (int i = 0; i < range.rank(); ++i) pool.push_back(Vector::Unit(range.rank(), i));
  for (const auto& seed : seeds) {
    std::vector<Vector> sv;
    for (const auto& st : seed.states()) sv.push_back(st.amplitudes());
    if (consider(score(seed.weights(), sv, layout, split, opts.fit))) return finish();
    for (const auto& c : to_coords(range, sv)) pool.push_back(c);
  }

  Rng rng(opts.seed);
  const auto products = product_vectors_in_range(range.basis, layout, split, opts.product_starts, rng);
  if (!products.empty()) {
    Scored pe = product_ensemble(range, products, layout, split, opts.fit);
    for (const auto& c : to_coords(range, pe.states)) pool.push_back(c);
    if (consider(std::move(pe))) return finish();
  }

  for (int n = range.rank(); n <= range.rank() + opts.extra_size; ++n) {
    for (int s = 0; s < opts.samples; ++s) {
      const Matrix u = random_isometry(n, range.rank(), rng);
      for (int i = 0; i < n; ++i) {
        Vector c = u.row(i).transpose().cwiseProduct(range.eig.cwiseSqrt().cast<cplx>());
        if (c.norm() > 1e-12) pool.push_back(c.normalized());
      }
    }
  }
  if (auto pe = pool_ensemble(range, pool, layout, split, opts.fit)) consider(std::move(*pe));
  return finish();
}

MixedMeasureValue schmidt_measure_mixed(const DensityOperator& rho, const Split& split, const MixedOptions& opts,
                                        const std::vector<Ensemble>& seeds) {
  const Range range = range_of(rho.matrix());
  if (range.rank() == 1) {
    const PureState psi(rho.layout(), range.basis.col(0));
    const RankBracket b = rank_bracket(psi, split, opts.fit);
    MixedMeasureValue v;
    v.lower = std::log2(static_cast<double>(b.lo));
    v.upper = std::log2(static_cast<double>(b.hi));
    v.witness = Ensemble({1.0}, {psi});
    v.witness_ranks = {b.hi};
    v.exact = b.exact;
    return v;
  }
  const double lower = std::max(0.0, 1.0 - separable_weight_bound(rho, split));
  MixedMeasureValue best = ensemble_search(rho, split, opts, seeds, lower);
  const auto dims = split.block_dims(rho.layout());
  if (split.size() == 2 && std::min(dims[0], dims[1]) == 2 && best.upper > lower + kCloseTol) {
    const BsaResult b = bsa(rho, split, opts);
    if (1.0 - b.s < best.upper) {
      std::vector<double> ws;
      std::vector<Vector> vs;
      for (const auto& p : b.separable_part) {
        ws.push_back(p.weight);
        vs.push_back(p.state.amplitudes());
      }
      if (b.remainder) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(b.remainder->matrix());
        for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
          const double e = es.eigenvalues()(i) * (1.0 - b.s);
          if (e <= 1e-15) continue;
          ws.push_back(e);
          vs.push_back(es.eigenvectors().col(i));
        }
      }
      MixedMeasureValue alt = from_scored(score(ws, vs, rho.layout(), split, opts.fit), rho.layout());
      if (alt.upper < best.upper) best = std::move(alt);
    }
  }
  best.lower = std::min(lower, best.upper);
  best.exact = best.upper - best.lower <= kCloseTol;
  return best;
}

}  // namespace schmidt
