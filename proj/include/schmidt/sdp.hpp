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

// Small dense semidefinite programs in block form.
//
//   primal:  minimize <C, X>   subject to <A_i, X> = b_i,  X >= 0
//   dual:    maximize b^T y    subject to C - sum_i y_i A_i = S >= 0
//
// X, S and every C, A_i are block diagonal with real symmetric blocks. A
// linear program is the special case of 1x1 blocks. The solver is a
// primal-dual interior point method (HKM direction with Mehrotra
// predictor-corrector steps) started from an infeasible point.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "schmidt/state.hpp"

namespace schmidt {

struct SdpProblem {
  /// C[k] is block k of the cost.
  std::vector<Eigen::MatrixXd> C;
  /// A[k][i] is block k of constraint i; an empty matrix means zero.
  std::vector<std::vector<Eigen::MatrixXd>> A;
  Eigen::VectorXd b;

  int constraints() const { return static_cast<int>(b.size()); }
  int blocks() const { return static_cast<int>(C.size()); }
};

struct SdpOptions {
  int max_iters = 200;
  double tol = 1e-10;
};

struct SdpSolution {
  std::vector<Eigen::MatrixXd> X;
  std::vector<Eigen::MatrixXd> S;
  Eigen::VectorXd y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& opts = {});

/// Real symmetric 2n x 2n image [[Re H, -Im H], [Im H, Re H]] of a Hermitian
/// matrix; positive semidefinite exactly when H is.
Eigen::MatrixXd real_embedding(const Matrix& h);

/// Inverse of real_embedding after symmetrizing the blocks.
Matrix complex_from_embedding(const Eigen::MatrixXd& m);

/// Orthonormal basis of the n x n Hermitian matrices under the trace inner
/// product: the diagonal units first, then real and imaginary off-diagonals.
std::vector<Matrix> hermitian_basis(int n);

}  // namespace schmidt
