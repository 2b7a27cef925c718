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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace schmidt {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Largest total Hilbert-space dimension accepted by default.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Thrown when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Local dimensions d_1..d_N of an N-party system.
///
/// Amplitude indices are mixed-radix over (i_1, ..., i_N) with party 1 the
/// most significant digit. Every reshape in the library is defined relative
/// to this convention.
class PartyLayout {
 public:
  explicit PartyLayout(std::vector<int> dims,
                       std::size_t dimension_cap = kDefaultDimensionCap);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  std::span<const int> dims() const { return dims_; }
  std::size_t total() const { return total_; }

  /// Stride of a party's digit in the flat index.
  std::size_t stride(int party) const;

  /// Layout of the tensor product system (this parties first).
  PartyLayout concat(const PartyLayout& other) const;

  friend bool operator==(const PartyLayout& a, const PartyLayout& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

/// Unit-norm state vector. The constructor normalizes; a zero vector throws.
class PureState {
 public:
  PureState(PartyLayout layout, Vector amplitudes);

  const PartyLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// |psi><psi|.
  Matrix projector() const;

  /// Tensor product with the other state's parties appended after this one's.
  PureState tensor(const PureState& other) const;

 private:
  PartyLayout layout_;
  Vector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix on a layout.
class DensityOperator {
 public:
  /// Validates Hermiticity (1e-12), trace (1e-12) and positivity (-1e-10).
  DensityOperator(PartyLayout layout, Matrix matrix);

  /// Hermitizes and rescales to unit trace before validating positivity.
  static DensityOperator normalized(PartyLayout layout, const Matrix& matrix);
  static DensityOperator from_pure(const PureState& psi);

  const PartyLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return rho_; }

  /// Numerical rank of the spectrum (eigenvalues above tol times the largest).
  int rank(double tol = 1e-10) const;

 private:
  PartyLayout layout_;
  Matrix rho_;
};

/// Convex combination of pure states on one layout.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<PureState> states);

  /// Spectral ensemble of rho; eigenvalues at or below `cutoff` are dropped.
  static Ensemble from_density(const DensityOperator& rho, double cutoff = 1e-15);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<PureState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const PartyLayout& layout() const { return states_.front().layout(); }

  /// Sum_i w_i |psi_i><psi_i| (unnormalized sum, no validation).
  Matrix assemble_matrix() const;
  DensityOperator assemble() const;

 private:
  std::vector<double> weights_;
  std::vector<PureState> states_;
};

}  // namespace schmidt
