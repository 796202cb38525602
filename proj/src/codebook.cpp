// Copyright 2026 The SNC Authors
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

#include "snc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <string>
#include <utility>

namespace snc {

Codebook::Codebook(std::vector<std::string> codewords) : codes_(std::move(codewords)) {
  if (codes_.empty()) throw Error(Errc::kInvalidParams, "codebook has no symbols");
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i].empty() ||
        codes_[i].find_first_not_of("01") != std::string::npos) {
      throw Error(Errc::kInvalidParams,
                  "codeword " + std::to_string(i) + " is not a nonempty bit string");
    }
  }
  if (!is_prefix_free()) throw Error(Errc::kInvalidPrefix, "codewords are not prefix-free");
}

namespace {

struct Node {
  double weight;
  std::size_t min_symbol;
  int left = -1;
  int right = -1;
};

void assign(const std::vector<Node>& nodes, int at, std::string& prefix,
            std::vector<std::string>& out) {
  const Node& n = nodes[static_cast<std::size_t>(at)];
  if (n.left < 0) {
    out[n.min_symbol] = prefix;
    return;
  }
  prefix.push_back('0');
  assign(nodes, n.left, prefix, out);
  prefix.back() = '1';
  assign(nodes, n.right, prefix, out);
  prefix.pop_back();
}

}  // namespace

Codebook Codebook::huffman(const Vector& weights) {
  const auto n = static_cast<std::size_t>(weights.size());
  if (n == 0) throw Error(Errc::kInvalidParams, "no symbols");
  if ((weights.array() < 0.0).any() || !weights.allFinite()) {
    throw Error(Errc::kNegativeEntry, "huffman weights must be finite and nonnegative");
  }
  if (!(weights.sum() > 0.0)) throw Error(Errc::kAllZero, "huffman weights are all zero");
  if (n == 1) return Codebook({"0"});

  std::vector<Node> nodes;
  nodes.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({weights(static_cast<Index>(i)), i});
  auto heavier = [&nodes](int x, int y) {
    const Node& a = nodes[static_cast<std::size_t>(x)];
    const Node& b = nodes[static_cast<std::size_t>(y)];
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.min_symbol > b.min_symbol;
  };
  std::priority_queue<int, std::vector<int>, decltype(heavier)> heap(heavier);
  for (std::size_t i = 0; i < n; ++i) heap.push(static_cast<int>(i));
  while (heap.size() > 1) {
    const int first = heap.top();
    heap.pop();
    const int second = heap.top();
    heap.pop();
    const Node& a = nodes[static_cast<std::size_t>(first)];
    const Node& b = nodes[static_cast<std::size_t>(second)];
    nodes.push_back({a.weight + b.weight, std::min(a.min_symbol, b.min_symbol), first, second});
    heap.push(static_cast<int>(nodes.size() - 1));
  }
  std::vector<std::string> codes(n);
  std::string prefix;
  assign(nodes, heap.top(), prefix, codes);
  return Codebook(std::move(codes));
}

const std::string& Codebook::code(SymbolId s) const {
  if (index(s) >= codes_.size()) {
    throw Error(Errc::kUnknownSymbol, "symbol " + std::to_string(index(s)) + " has no codeword");
  }
  return codes_[index(s)];
}

std::vector<std::size_t> Codebook::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(codes_.size());
  for (const auto& c : codes_) out.push_back(c.size());
  return out;
}

double Codebook::kraft_sum() const {
  double k = 0.0;
  for (const auto& c : codes_) k += std::ldexp(1.0, -static_cast<int>(c.size()));
  return k;
}

bool Codebook::is_prefix_free() const {
  std::vector<std::string> sorted = codes_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].starts_with(sorted[i - 1])) return false;
  }
  return true;
}

double Codebook::expected_length(const Vector& weights) const {
  if (weights.size() != size()) {
    throw Error(Errc::kDimensionMismatch, "weights and codebook differ in size");
  }
  double total = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    total += weights(i) * static_cast<double>(codes_[static_cast<std::size_t>(i)].size());
  }
  return total;
}

}  // namespace snc
