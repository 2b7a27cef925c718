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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "schmidt/split.hpp"
#include "schmidt/state.hpp"

namespace schmidt {

/// Default relative tolerance for numerical ranks.
inline constexpr double kRankTol = 1e-8;

/// Number of singular values above tol * sigma_max; 0 only for the zero matrix.
int numerical_rank(const Matrix& m, double tol = kRankTol);

Eigen::VectorXd singular_values(const Matrix& m);

/// Dense tensor with mixed-radix indexing, mode 0 most significant.
struct BlockTensor {
  std::vector<int> dims;
  Vector data;

  int modes() const { return static_cast<int>(dims.size()); }
  std::size_t size() const { return static_cast<std::size_t>(data.size()); }
};

/// Index permutation `perm` with new[j] = old[perm[j]] when the parties of a
/// layout with `dims` are reordered to `order`.
std::vector<std::size_t> party_permutation(std::span<const int> dims, std::span<const int> order);

/// The state as a k-mode tensor over the blocks of `split` (block b becomes
/// mode b; inside a block, parties keep ascending order).
BlockTensor group_by_split(const PureState& psi, const Split& split);
BlockTensor group_by_split(const Vector& amplitudes, const PartyLayout& layout, const Split& split);

/// Inverse of group_by_split.
Vector ungroup(const BlockTensor& t, const PartyLayout& layout, const Split& split);

/// Rows indexed by the modes in `row_modes` (in the given order), columns by
/// the remaining modes in ascending order.
Matrix flatten(const BlockTensor& t, std::span<const int> row_modes);

/// Inverse of flatten for the same mode grouping.
BlockTensor unflatten(const Matrix& m, const std::vector<int>& dims, std::span<const int> row_modes);

/// Multiplies mode `mode` by `op` (op.cols() must equal dims[mode]).
BlockTensor mode_product(const BlockTensor& t, int mode, const Matrix& op);

/// Fixes mode `mode` at `index` and drops it.
BlockTensor slice(const BlockTensor& t, int mode, int index);

/// Removes modes of dimension 1.
BlockTensor squeeze(const BlockTensor& t);

/// Reshapes psi into the (block_subset | rest) matrix for the split.
Matrix matricize(const PureState& psi, const Split& split, std::span<const int> block_subset);

/// Reorders a D x D operator so that its tensor factors follow the split's
/// blocks; the returned dims are the block dimensions.
Matrix group_operator(const Matrix& op, const PartyLayout& layout, const Split& split);

/// Partial transpose over the listed modes of an operator on modes `dims`.
Matrix partial_transpose(const Matrix& op, std::span<const int> dims, std::span<const int> modes);

/// Applies a block-local operator to one block of a state vector / operator.
Vector apply_block_operator(const Vector& amplitudes, const PartyLayout& layout,
                            const Split& split, int block, const Matrix& op);
/// op * rho * op^dagger on one block.
Matrix conjugate_block_operator(const Matrix& rho, const PartyLayout& layout,
                                const Split& split, int block, const Matrix& op);

/// Positive part of a Hermitian matrix.
Matrix positive_part(const Matrix& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& h);

/// Orthonormal basis of the column space (singular values above tol * max).
Matrix column_basis(const Matrix& m, double tol = kRankTol);

using Rng = std::mt19937_64;

Vector random_gaussian_vector(Eigen::Index n, Rng& rng);
Matrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Haar-random unitary via phase-corrected QR.
Matrix random_unitary(Eigen::Index n, Rng& rng);
/// Haar-random isometry with `rows` >= `cols`.
Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace schmidt
