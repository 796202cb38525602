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

#ifndef SNC_CODEBOOK_HPP_
#define SNC_CODEBOOK_HPP_

#include <string>
#include <vector>

#include "snc/ids.hpp"
#include "snc/probcore.hpp"

namespace snc {

// Binary prefix code over symbols 0..n-1. Codewords are strings of '0'/'1'.
class Codebook {
 public:
  explicit Codebook(std::vector<std::string> codewords);

  // Optimal binary prefix code for nonnegative weights (not necessarily
  // normalized, at least one positive). The two lightest nodes are merged
  // first; ties go to the node holding the smallest symbol id, and the first
  // node popped takes bit 0. A single symbol gets the codeword "0".
  static Codebook huffman(const Vector& weights);

  Index size() const noexcept { return static_cast<Index>(codes_.size()); }
  const std::string& code(SymbolId s) const;
  std::size_t length(SymbolId s) const { return code(s).size(); }
  std::vector<std::size_t> lengths() const;
  const std::vector<std::string>& codewords() const noexcept { return codes_; }

  double kraft_sum() const;
  bool is_prefix_free() const;
  // sum_s w(s) len(s), bits.
  double expected_length(const Vector& weights) const;

 private:
  std::vector<std::string> codes_;
};

}  // namespace snc

#endif  // SNC_CODEBOOK_HPP_
