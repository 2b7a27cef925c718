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

#include "schmidt/linalg.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace schmidt {

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

int numerical_rank(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw DomainError("rank tolerance must be positive");
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > tol * s(0) ? 1 : 0;
  return r;
}

namespace {

std::vector<std::size_t> strides_of(std::span<const int> dims) {
  std::vector<std::size_t> st(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) st[i - 1] = st[i] * static_cast<std::size_t>(dims[i]);
  return st;
}

std::size_t product(std::span<const int> dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

std::vector<int> split_order(const Split& split) {
  std::vector<int> order;
  for (const auto& b : split.blocks()) order.insert(order.end(), b.begin(), b.end());
  return order;
}

}  // namespace

std::vector<std::size_t> party_permutation(std::span<const int> dims, std::span<const int> order) {
  const auto old_strides = strides_of(dims);
  std::vector<int> new_dims;
  for (int p : order) new_dims.push_back(dims[static_cast<std::size_t>(p)]);
  const std::size_t total = product(dims);
  std::vector<std::size_t> perm(total);
  std::vector<int> digit(order.size(), 0);
  for (std::size_t j = 0; j < total; ++j) {
    std::size_t old = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      old += static_cast<std::size_t>(digit[q]) * old_strides[static_cast<std::size_t>(order[q])];
    perm[j] = old;
    for (std::size_t q = order.size(); q-- > 0;) {
      if (++digit[q] < new_dims[q]) break;
      digit[q] = 0;
    }
  }
  return perm;
}

BlockTensor group_by_split(const Vector& amplitudes, const PartyLayout& layout, const Split& split) {
  const auto order = split_order(split);
  const auto perm = party_permutation(layout.dims(), order);
  BlockTensor t;
  t.dims = split.block_dims(layout);
  t.data.resize(amplitudes.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    t.data(static_cast<Eigen::Index>(j)) = amplitudes(static_cast<Eigen::Index>(perm[j]));
  return t;
}

BlockTensor group_by_split(const PureState& psi, const Split& split) {
  return group_by_split(psi.amplitudes(), psi.layout(), split);
}

Vector ungroup(const BlockTensor& t, const PartyLayout& layout, const Split& split) {
  const auto perm = party_permutation(layout.dims(), split_order(split));
  Vector out(t.data.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    out(static_cast<Eigen::Index>(perm[j])) = t.data(static_cast<Eigen::Index>(j));
  return out;
}

Matrix flatten(const BlockTensor& t, std::span<const int> row_modes) {
  std::vector<int> order(row_modes.begin(), row_modes.end());
  std::vector<int> rest;
  for (int m = 0; m < t.modes(); ++m)
    if (std::find(order.begin(), order.end(), m) == order.end()) rest.push_back(m);
  std::size_t rows = 1;
  for (int m : order) rows *= static_cast<std::size_t>(t.dims[static_cast<std::size_t>(m)]);
  const std::size_t cols = t.size() / rows;
  order.insert(order.end(), rest.begin(), rest.end());
  const auto perm = party_permutation(t.dims, order);
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          t.data(static_cast<Eigen::Index>(perm[r * cols + c]));
  return out;
}

BlockTensor unflatten(const Matrix& m, const std::vector<int>& dims, std::span<const int> row_modes) {
  std::vector<int> order(row_modes.begin(), row_modes.end());
  for (int q = 0; q < static_cast<int>(dims.size()); ++q)
    if (std::find(row_modes.begin(), row_modes.end(), q) == row_modes.end()) order.push_back(q);
  const auto perm = party_permutation(dims, order);
  BlockTensor t{dims, Vector(static_cast<Eigen::Index>(perm.size()))};
  const auto cols = static_cast<std::size_t>(m.cols());
  for (std::size_t j = 0; j < perm.size(); ++j)
    t.data(static_cast<Eigen::Index>(perm[j])) =
        m(static_cast<Eigen::Index>(j / cols), static_cast<Eigen::Index>(j % cols));
  return t;
}

BlockTensor mode_product(const BlockTensor& t, int mode, const Matrix& op) {
  if (op.cols() != t.dims[static_cast<std::size_t>(mode)])
    throw DomainError("mode product dimension mismatch");
  const std::array<int, 1> rows{mode};
  const Matrix m = op * flatten(t, rows);
  auto dims = t.dims;
  dims[static_cast<std::size_t>(mode)] = static_cast<int>(op.rows());
  return unflatten(m, dims, rows);
}

BlockTensor slice(const BlockTensor& t, int mode, int index) {
  const std::array<int, 1> rows{mode};
  const Matrix m = flatten(t, rows);
  BlockTensor out;
  for (int q = 0; q < t.modes(); ++q)
    if (q != mode) out.dims.push_back(t.dims[static_cast<std::size_t>(q)]);
  out.data = m.row(index).transpose();
  return out;
}

BlockTensor squeeze(const BlockTensor& t) {
  BlockTensor out;
  for (int d : t.dims)
    if (d != 1) out.dims.push_back(d);
  out.data = t.data;
  return out;
}

Matrix matricize(const PureState& psi, const Split& split, std::span<const int> block_subset) {
  if (block_subset.empty() || static_cast<int>(block_subset.size()) >= split.size())
    throw DomainError("block subset must be nonempty and proper");
  std::vector<int> sorted(block_subset.begin(), block_subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
      sorted.back() >= split.size())
    throw DomainError("invalid block subset");
  return flatten(group_by_split(psi, split), sorted);
}

Matrix group_operator(const Matrix& op, const PartyLayout& layout, const Split& split) {
  const auto perm = party_permutation(layout.dims(), split_order(split));
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = op(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]),
                     static_cast<Eigen::Index>(perm[static_cast<std::size_t>(j)]));
  return out;
}

Matrix partial_transpose(const Matrix& op, std::span<const int> dims, std::span<const int> modes) {
  const auto st = strides_of(dims);
  const auto n = static_cast<Eigen::Index>(product(dims));
  if (op.rows() != n || op.cols() != n) throw DomainError("partial transpose shape mismatch");
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      auto a = static_cast<std::size_t>(i);
      auto b = static_cast<std::size_t>(j);
      for (int m : modes) {
        const auto s = st[static_cast<std::size_t>(m)];
        const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(m)]);
        const std::size_t da = (a / s) % d;
        const std::size_t db = (b / s) % d;
        a = a - da * s + db * s;
        b = b - db * s + da * s;
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = op(i, j);
    }
  }
  return out;
}

Vector apply_block_operator(const Vector& amplitudes, const PartyLayout& layout, const Split& split,
                            int block, const Matrix& op) {
  const BlockTensor t = group_by_split(amplitudes, layout, split);
  if (op.rows() != op.cols()) throw DomainError("block operator must be square");
  return ungroup(mode_product(t, block, op), layout, split);
}

Matrix conjugate_block_operator(const Matrix& rho, const PartyLayout& layout, const Split& split,
                                int block, const Matrix& op) {
  Matrix half(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    half.col(c) = apply_block_operator(rho.col(c), layout, split, block, op);
  Matrix out(rho.rows(), rho.cols());
  const Matrix half_adj = half.adjoint();
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    out.col(c) = apply_block_operator(half_adj.col(c), layout, split, block, op);
  return out.adjoint();
}

Matrix positive_part(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix column_basis(const Matrix& m, double tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    while (r < s.size() && s(r) > tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Vector random_gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

Matrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows < cols) throw DomainError("isometry needs rows >= cols");
  const Matrix g = random_gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) { return random_isometry(n, n, rng); }

}  // namespace schmidt
