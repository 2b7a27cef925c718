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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schmidt/state.hpp"

namespace schmidt {

/// Partition of the parties {0..N-1} into k >= 2 blocks.
///
/// Canonical form: members ascending inside each block, blocks ordered by
/// their smallest member. Party indices are zero-based here; the textual
/// forms use one-based labels.
class Split {
 public:
  Split(int parties, std::vector<std::vector<int>> blocks);

  /// Every party in its own block.
  static Split full(int parties);

  /// Parses "12|3|4" (one-based digits) or "1.2|3|10" for N >= 10.
  static Split parse(std::string_view text, int parties);

  int parties() const { return parties_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_.at(static_cast<std::size_t>(b)); }

  /// Index of the block holding `party`.
  int block_of(int party) const;

  /// Total dimension of block b under a layout.
  int block_dim(const PartyLayout& layout, int b) const;
  std::vector<int> block_dims(const PartyLayout& layout) const;

  /// Compact machine form, e.g. "12|3|4".
  std::string to_string() const;
  /// Bracket notation, e.g. "(A1A2)A3A4".
  std::string label() const;
  /// Nested one-based lists, e.g. [[1,2],[3],[4]].
  std::vector<std::vector<int>> one_based() const;

  friend bool operator==(const Split& a, const Split& b) {
    return a.parties_ == b.parties_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const Split& a, const Split& b) {
    return a.blocks_ < b.blocks_;
  }

 private:
  int parties_;
  std::vector<std::vector<int>> blocks_;
};

/// Every split of `parties` parties into `k` blocks, canonical and unique,
/// ordered by restricted-growth string. `k == std::nullopt` means all k in
/// 2..N, in increasing k.
std::vector<Split> enumerate_splits(int parties, std::optional<int> k);

/// Every nonempty proper subset of block indices {0..k-1} that contains
/// block 0, i.e. one representative per bipartition of the blocks.
std::vector<std::vector<int>> block_bipartitions(int k);

}  // namespace schmidt
