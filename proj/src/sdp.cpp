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

#include "schmidt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace schmidt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

using Blocks = std::vector<MatrixXd>;

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double norm(const Blocks& a) { return std::sqrt(inner(a, a)); }

// A(X)_i = <A_i, X>.
VectorXd apply_a(const SdpProblem& p, const Blocks& x) {
  VectorXd out = VectorXd::Zero(p.constraints());
  for (int k = 0; k < p.blocks(); ++k)
    for (int i = 0; i < p.constraints(); ++i) {
      const MatrixXd& a = p.A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      if (a.size()) out(i) += a.cwiseProduct(x[static_cast<std::size_t>(k)]).sum();
    }
  return out;
}

// A*(y) = sum_i y_i A_i.
Blocks apply_at(const SdpProblem& p, const VectorXd& y) {
  Blocks out;
  for (int k = 0; k < p.blocks(); ++k) {
    const auto n = p.C[static_cast<std::size_t>(k)].rows();
    MatrixXd m = MatrixXd::Zero(n, n);
    for (int i = 0; i < p.constraints(); ++i) {
      const MatrixXd& a = p.A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      if (a.size()) m += y(i) * a;
    }
    out.push_back(std::move(m));
  }
  return out;
}

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha in (0, 1] with x + alpha dx >= 0, scaled by gamma.
double step_length(const Blocks& x, const Blocks& dx, double gamma) {
  double alpha = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::LLT<MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd l = llt.matrixL();
    const MatrixXd linv = l.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(l.rows(), l.cols()));
    const MatrixXd m = sym(linv * dx[k] * linv.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -gamma / lmin);
  }
  return alpha;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
  const int m = p.constraints();
  const int nb = p.blocks();
  double total_dim = 0.0;
  double scale = 1.0;
  for (int k = 0; k < nb; ++k) {
    total_dim += static_cast<double>(p.C[static_cast<std::size_t>(k)].rows());
    scale = std::max(scale, p.C[static_cast<std::size_t>(k)].norm());
    for (int i = 0; i < m; ++i) scale = std::max(scale, p.A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].norm());
  }
  scale = std::max(scale, p.b.lpNorm<Eigen::Infinity>());

  SdpSolution sol;
  sol.y = VectorXd::Zero(m);
  for (int k = 0; k < nb; ++k) {
    const auto n = p.C[static_cast<std::size_t>(k)].rows();
    sol.X.push_back(10.0 * scale * MatrixXd::Identity(n, n));
    sol.S.push_back(10.0 * scale * MatrixXd::Identity(n, n));
  }
  const double bnorm = 1.0 + p.b.norm();
  double cnorm = 1.0;
  for (const auto& c : p.C) cnorm += c.norm();

  for (int it = 0; it < opts.max_iters; ++it) {
    sol.iterations = it;
    Blocks& X = sol.X;
    Blocks& S = sol.S;
    const VectorXd rp = p.b - apply_a(p, X);
    Blocks rd = apply_at(p, sol.y);
    for (int k = 0; k < nb; ++k) rd[static_cast<std::size_t>(k)] = p.C[static_cast<std::size_t>(k)] - S[static_cast<std::size_t>(k)] - rd[static_cast<std::size_t>(k)];
    const double mu = inner(X, S) / total_dim;
    sol.primal_objective = inner(p.C, X);
    sol.dual_objective = p.b.dot(sol.y);
    sol.primal_infeasibility = rp.norm() / bnorm;
    sol.dual_infeasibility = norm(rd) / cnorm;
    const double gap = std::abs(sol.primal_objective - sol.dual_objective) /
                       (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    if (gap < opts.tol && sol.primal_infeasibility < opts.tol && sol.dual_infeasibility < opts.tol) {
      sol.converged = true;
      break;
    }

    Blocks sinv;
    for (int k = 0; k < nb; ++k) sinv.push_back(sym(S[static_cast<std::size_t>(k)].llt().solve(MatrixXd::Identity(S[static_cast<std::size_t>(k)].rows(), S[static_cast<std::size_t>(k)].cols()))));

    // Schur complement M_ij = sum_k tr(A_i X A_j S^-1).
    MatrixXd M = MatrixXd::Zero(m, m);
    for (int k = 0; k < nb; ++k) {
      const auto& Ak = p.A[static_cast<std::size_t>(k)];
      const MatrixXd& Xk = X[static_cast<std::size_t>(k)];
      const MatrixXd& Sk = sinv[static_cast<std::size_t>(k)];
      for (int j = 0; j < m; ++j) {
        const MatrixXd& aj = Ak[static_cast<std::size_t>(j)];
        if (!aj.size()) continue;
        const MatrixXd g = Xk * aj * Sk;
        for (int i = 0; i <= j; ++i) {
          const MatrixXd& ai = Ak[static_cast<std::size_t>(i)];
          if (!ai.size()) continue;
          const double v = ai.cwiseProduct(g.transpose()).sum();
          M(i, j) += v;
          if (i != j) M(j, i) += v;
        }
      }
    }
    Eigen::LDLT<MatrixXd> ldlt(M);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all()) {
      const double ridge = 1e-14 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(M + ridge * MatrixXd::Identity(m, m));
    }

    Blocks xrs;
    for (int k = 0; k < nb; ++k) xrs.push_back(X[static_cast<std::size_t>(k)] * rd[static_cast<std::size_t>(k)] * sinv[static_cast<std::size_t>(k)]);
    const VectorXd base = p.b + apply_a(p, xrs);
    const VectorXd a_sinv = apply_a(p, sinv);

    auto direction = [&](double sigma_mu, const Blocks* corr, Blocks& dX, Blocks& dS, VectorXd& dy) {
      VectorXd rhs = base - sigma_mu * a_sinv;
      if (corr) rhs += apply_a(p, *corr);
      dy = ldlt.solve(rhs);
      dS = apply_at(p, dy);
      dX.clear();
      for (int k = 0; k < nb; ++k) {
        const auto K = static_cast<std::size_t>(k);
        dS[K] = rd[K] - dS[K];
        MatrixXd dx = sigma_mu * sinv[K] - X[K] - X[K] * dS[K] * sinv[K];
        if (corr) dx -= (*corr)[K];
        dX.push_back(sym(dx));
      }
    };

    Blocks dXa, dSa;
    VectorXd dya;
    direction(0.0, nullptr, dXa, dSa, dya);
    const double ap = step_length(X, dXa, 1.0);
    const double ad = step_length(S, dSa, 1.0);
    Blocks xa = X, sa = S;
    for (int k = 0; k < nb; ++k) {
      xa[static_cast<std::size_t>(k)] += ap * dXa[static_cast<std::size_t>(k)];
      sa[static_cast<std::size_t>(k)] += ad * dSa[static_cast<std::size_t>(k)];
    }
    const double mua = inner(xa, sa) / total_dim;
    const double sigma = std::clamp(std::pow(mua / mu, 3.0), 0.0, 1.0);
    Blocks corr;
    for (int k = 0; k < nb; ++k) corr.push_back(dXa[static_cast<std::size_t>(k)] * dSa[static_cast<std::size_t>(k)] * sinv[static_cast<std::size_t>(k)]);

    Blocks dX, dS;
    VectorXd dy;
    direction(sigma * mu, &corr, dX, dS, dy);
    const double gamma = 0.98;
    const double sp = step_length(X, dX, gamma);
    const double sd = step_length(S, dS, gamma);
    Blocks nx = X, ns = S;
    bool finite = dy.allFinite() && std::isfinite(sp) && std::isfinite(sd);
    for (int k = 0; k < nb && finite; ++k) {
      nx[static_cast<std::size_t>(k)] = sym(X[static_cast<std::size_t>(k)] + sp * dX[static_cast<std::size_t>(k)]);
      ns[static_cast<std::size_t>(k)] = sym(S[static_cast<std::size_t>(k)] + sd * dS[static_cast<std::size_t>(k)]);
      finite = nx[static_cast<std::size_t>(k)].allFinite() && ns[static_cast<std::size_t>(k)].allFinite();
    }
    // Numerical breakdown near the boundary: keep the last good iterate.
    if (!finite || (sp < 1e-12 && sd < 1e-12)) break;
    X = std::move(nx);
    S = std::move(ns);
    sol.y += sd * dy;
  }
  sol.primal_objective = inner(p.C, sol.X);
  sol.dual_objective = p.b.dot(sol.y);
  return sol;
}

Eigen::MatrixXd real_embedding(const Matrix& h) {
  const auto n = h.rows();
  MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return sym(out);
}

Matrix complex_from_embedding(const Eigen::MatrixXd& m) {
  const auto n = m.rows() / 2;
  const MatrixXd re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  const MatrixXd im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  Matrix h(n, n);
  h.real() = re;
  h.imag() = im;
  return 0.5 * (h + h.adjoint());
}

std::vector<Matrix> hermitian_basis(int n) {
  std::vector<Matrix> out;
  for (int k = 0; k < n; ++k) {
    Matrix e = Matrix::Zero(n, n);
    e(k, k) = 1.0;
    out.push_back(std::move(e));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Matrix e = Matrix::Zero(n, n);
      e(k, l) = e(l, k) = r;
      out.push_back(std::move(e));
      Matrix f = Matrix::Zero(n, n);
      f(k, l) = cplx(0.0, -r);
      f(l, k) = cplx(0.0, r);
      out.push_back(std::move(f));
    }
  return out;
}

}  // namespace schmidt
