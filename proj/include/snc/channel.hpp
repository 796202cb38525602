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

#ifndef SNC_CHANNEL_HPP_
#define SNC_CHANNEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "snc/codebook.hpp"
#include "snc/ids.hpp"
#include "snc/rng.hpp"
#include "snc/system1.hpp"

namespace snc {

// Binary erasure channel with ideal feedback: an erased bit is resent until
// it gets through.
struct ChannelSpec {
  double erasure_prob = 0.0;

  void validate() const;  // 0 <= erasure_prob < 1
};

struct TransmissionLog {
  std::uint64_t payload_bits = 0;
  std::uint64_t total_channel_uses = 0;
  std::uint64_t erasures = 0;
};

struct Transmission {
  std::string delivered;
  TransmissionLog log;
};

// bits is a nonempty string of '0'/'1'.
Transmission transmit(const std::string& bits, const ChannelSpec& spec, Rng& rng);

// Channel uses needed for `payload_bits` bits, without materializing them.
TransmissionLog transmit_count(std::uint64_t payload_bits, const ChannelSpec& spec, Rng& rng);

std::string encode_sr(const std::vector<SymbolId>& symbols, const Codebook& codebook);
std::string encode_sr(const SemanticRep& sr, const Codebook& codebook);

// Exact inverse of encode_sr. Throws TruncatedStream on a dangling prefix and
// InvalidPrefix on bits that match no codeword.
std::vector<SymbolId> decode_sr(const std::string& bits, const Codebook& codebook);

}  // namespace snc

#endif  // SNC_CHANNEL_HPP_
