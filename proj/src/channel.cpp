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

#include "snc/channel.hpp"

#include <map>
#include <set>

namespace snc {

void ChannelSpec::validate() const {
  if (!(erasure_prob >= 0.0 && erasure_prob < 1.0)) {
    throw Error(Errc::kInvalidParams, "erasure probability must lie in [0, 1)");
  }
}

namespace {

std::uint64_t uses_for_one_bit(double pe, Rng& rng) {
  std::uint64_t uses = 1;
  while (rng.uniform() < pe) ++uses;
  return uses;
}

}  // namespace

TransmissionLog transmit_count(std::uint64_t payload_bits, const ChannelSpec& spec, Rng& rng) {
  spec.validate();
  TransmissionLog log;
  log.payload_bits = payload_bits;
  for (std::uint64_t i = 0; i < payload_bits; ++i) {
    log.total_channel_uses += uses_for_one_bit(spec.erasure_prob, rng);
  }
  log.erasures = log.total_channel_uses - log.payload_bits;
  return log;
}

Transmission transmit(const std::string& bits, const ChannelSpec& spec, Rng& rng) {
  if (bits.empty()) throw Error(Errc::kInvalidParams, "nothing to transmit");
  if (bits.find_first_not_of("01") != std::string::npos) {
    throw Error(Errc::kInvalidParams, "payload is not a bit string");
  }
  Transmission out;
  out.log = transmit_count(bits.size(), spec, rng);
  // Every erasure is repaired by retransmission, so the receiver ends up with
  // the exact payload.
  out.delivered = bits;
  return out;
}

std::string encode_sr(const std::vector<SymbolId>& symbols, const Codebook& codebook) {
  std::string out;
  for (SymbolId s : symbols) out += codebook.code(s);
  return out;
}

std::string encode_sr(const SemanticRep& sr, const Codebook& codebook) {
  return encode_sr(sr.symbols, codebook);
}

std::vector<SymbolId> decode_sr(const std::string& bits, const Codebook& codebook) {
  std::map<std::string, std::size_t> lookup;
  std::set<std::string> prefixes;
  const auto& words = codebook.codewords();
  for (std::size_t i = 0; i < words.size(); ++i) {
    lookup.emplace(words[i], i);
    for (std::size_t n = 1; n < words[i].size(); ++n) prefixes.insert(words[i].substr(0, n));
  }
  std::vector<SymbolId> out;
  std::string cur;
  for (std::size_t pos = 0; pos < bits.size(); ++pos) {
    const char b = bits[pos];
    if (b != '0' && b != '1') {
      throw Error(Errc::kInvalidPrefix, "non-bit character at offset " + std::to_string(pos));
    }
    cur.push_back(b);
    if (auto it = lookup.find(cur); it != lookup.end()) {
      out.push_back(SymbolId{it->second});
      cur.clear();
    } else if (!prefixes.contains(cur)) {
      throw Error(Errc::kInvalidPrefix,
                  "bits ending at offset " + std::to_string(pos) + " match no codeword");
    }
  }
  if (!cur.empty()) {
    throw Error(Errc::kTruncatedStream, "stream ends inside a codeword");
  }
  return out;
}

}  // namespace snc
