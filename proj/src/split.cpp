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

#include "schmidt/split.hpp"

#include <algorithm>
#include <charconv>

namespace schmidt {

Split::Split(int parties, std::vector<std::vector<int>> blocks)
    : parties_(parties), blocks_(std::move(blocks)) {
  if (parties_ < 1) throw DomainError("split needs at least one party");
  std::vector<int> seen(static_cast<std::size_t>(parties_), 0);
  for (auto& b : blocks_) {
    if (b.empty()) throw DomainError("split blocks must be nonempty");
    std::sort(b.begin(), b.end());
    for (int p : b) {
      if (p < 0 || p >= parties_) throw DomainError("party index out of range in split");
      if (seen[static_cast<std::size_t>(p)]++) throw DomainError("split blocks overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw DomainError("split blocks do not cover every party");
  if (blocks_.size() < 2) throw DomainError("split needs at least two blocks");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Split Split::full(int parties) {
  std::vector<std::vector<int>> b;
  for (int p = 0; p < parties; ++p) b.push_back({p});
  return Split(parties, std::move(b));
}

Split Split::parse(std::string_view text, int parties) {
  std::vector<std::vector<int>> blocks;
  const bool dotted = text.find('.') != std::string_view::npos || parties >= 10;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t bar = std::min(text.find('|', start), text.size());
    const std::string_view piece = text.substr(start, bar - start);
    std::vector<int> block;
    if (dotted) {
      std::size_t s = 0;
      while (s <= piece.size()) {
        const std::size_t dot = std::min(piece.find('.', s), piece.size());
        int v = 0;
        const auto tok = piece.substr(s, dot - s);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
          throw DomainError("malformed split '" + std::string(text) + "'");
        block.push_back(v - 1);
        s = dot + 1;
      }
    } else {
      for (char c : piece) {
        if (c < '1' || c > '9') throw DomainError("malformed split '" + std::string(text) + "'");
        block.push_back(c - '1');
      }
    }
    blocks.push_back(std::move(block));
    start = bar + 1;
  }
  return Split(parties, std::move(blocks));
}

int Split::block_of(int party) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), party)) return static_cast<int>(b);
  throw DomainError("party not in split");
}

int Split::block_dim(const PartyLayout& layout, int b) const {
  int d = 1;
  for (int p : block(b)) d *= layout.dim(p);
  return d;
}

std::vector<int> Split::block_dims(const PartyLayout& layout) const {
  if (layout.parties() != parties_) throw DomainError("split and layout disagree on party count");
  std::vector<int> out;
  for (int b = 0; b < size(); ++b) out.push_back(block_dim(layout, b));
  return out;
}

std::string Split::to_string() const {
  std::string s;
  const bool dotted = parties_ >= 10;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) s += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (dotted && i) s += '.';
      s += std::to_string(blocks_[b][i] + 1);
    }
  }
  return s;
}

std::string Split::label() const {
  std::string s;
  for (const auto& b : blocks_) {
    if (b.size() > 1) s += '(';
    for (int p : b) s += "A" + std::to_string(p + 1);
    if (b.size() > 1) s += ')';
  }
  return s;
}

std::vector<std::vector<int>> Split::one_based() const {
  auto out = blocks_;
  for (auto& b : out)
    for (int& p : b) ++p;
  return out;
}

namespace {

// Restricted growth strings a[0..n-1] with a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
void grow(int n, int k, std::vector<int>& a, int i, int used, std::vector<Split>& out) {
  if (n - i < k - used) return;
  if (i == n) {
    if (used != k) return;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int p = 0; p < n; ++p) blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(p)])].push_back(p);
    out.emplace_back(n, std::move(blocks));
    return;
  }
  for (int v = 0; v <= std::min(used, k - 1); ++v) {
    a[static_cast<std::size_t>(i)] = v;
    grow(n, k, a, i + 1, std::max(used, v + 1), out);
  }
}

}  // namespace

std::vector<Split> enumerate_splits(int parties, std::optional<int> k) {
  if (parties < 2) throw DomainError("splits need at least two parties");
  std::vector<Split> out;
  const int lo = k ? *k : 2;
  const int hi = k ? *k : parties;
  if (lo < 2 || hi > parties) throw DomainError("split size k must satisfy 2 <= k <= N");
  for (int kk = lo; kk <= hi; ++kk) {
    std::vector<int> a(static_cast<std::size_t>(parties), 0);
    grow(parties, kk, a, 1, 1, out);
  }
  return out;
}

std::vector<std::vector<int>> block_bipartitions(int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << k) - 1; ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> s;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) s.push_back(b);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace schmidt
