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

#include "schmidt/state.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace schmidt {

PartyLayout::PartyLayout(std::vector<int> dims, std::size_t dimension_cap)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("layout needs at least one party");
  for (int d : dims_) {
    if (d < 2) throw DomainError("local dimension must be >= 2, got " + std::to_string(d));
    if (total_ > dimension_cap / static_cast<std::size_t>(d))
      throw DomainError("total dimension exceeds cap " + std::to_string(dimension_cap));
    total_ *= static_cast<std::size_t>(d);
  }
}

std::size_t PartyLayout::stride(int party) const {
  std::size_t s = 1;
  for (int p = parties() - 1; p > party; --p) s *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(p)]);
  return s;
}

PartyLayout PartyLayout::concat(const PartyLayout& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return PartyLayout(std::move(d), std::max(total_ * other.total_, kDefaultDimensionCap));
}

PureState::PureState(PartyLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != layout_.total())
    throw DomainError("amplitude count does not match layout dimension");
  const double n = amps_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("state vector must be nonzero and finite");
  amps_ /= n;
}

Matrix PureState::projector() const { return amps_ * amps_.adjoint(); }

PureState PureState::tensor(const PureState& other) const {
  Vector out(amps_.size() * other.amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i)
    out.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
  return PureState(layout_.concat(other.layout_), std::move(out));
}

DensityOperator::DensityOperator(PartyLayout layout, Matrix matrix)
    : layout_(std::move(layout)), rho_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.total());
  if (rho_.rows() != n || rho_.cols() != n)
    throw DomainError("density matrix shape does not match layout");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("density matrix is not Hermitian");
  rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
  if (std::abs(rho_.trace().real() - 1.0) > 1e-12)
    throw DomainError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw DomainError("density matrix is not positive semidefinite");
}

DensityOperator DensityOperator::normalized(PartyLayout layout, const Matrix& matrix) {
  Matrix h = 0.5 * (matrix + matrix.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw DomainError("matrix has nonpositive trace");
  h /= tr;
  return DensityOperator(std::move(layout), std::move(h));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return normalized(psi.layout(), psi.projector());
}

int DensityOperator::rank(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  int r = 0;
  for (double v : es.eigenvalues()) r += v > tol * top ? 1 : 0;
  return r;
}

Ensemble::Ensemble(std::vector<double> weights, std::vector<PureState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (states_.empty() || weights_.size() != states_.size())
    throw DomainError("ensemble needs matching nonempty weights and states");
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || weights_[i] > 1.0 + 1e-12)
      throw DomainError("ensemble weights must lie in (0, 1]");
    if (!(states_[i].layout() == states_.front().layout()))
      throw DomainError("ensemble states must share a layout");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("ensemble weights must sum to 1");
}

Ensemble Ensemble::from_density(const DensityOperator& rho, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<double> w;
  std::vector<PureState> s;
  double kept = 0.0;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double v = es.eigenvalues()(i);
    if (v <= cutoff) continue;
    w.push_back(v);
    kept += v;
    s.emplace_back(rho.layout(), es.eigenvectors().col(i));
  }
  for (double& x : w) x /= kept;
  return Ensemble(std::move(w), std::move(s));
}

Matrix Ensemble::assemble_matrix() const {
  const auto n = static_cast<Eigen::Index>(layout().total());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < states_.size(); ++i)
    m.noalias() += weights_[i] * states_[i].amplitudes() * states_[i].amplitudes().adjoint();
  return m;
}

DensityOperator Ensemble::assemble() const {
  return DensityOperator::normalized(layout(), assemble_matrix());
}

}  // namespace schmidt
