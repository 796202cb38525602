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

#ifndef SNC_RNG_HPP_
#define SNC_RNG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>

namespace snc {

// Deterministic pseudo-random stream.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded by four successive
// SplitMix64 outputs of the 64-bit seed. All derived variates (uniform, normal,
// gamma, beta) are computed here from raw 64-bit words with fixed algorithms so
// that a seed yields the same sequence on every platform and standard library.
//
// Independent streams are derived from a (seed, key) pair with derive_seed();
// experiments use one stream per (cell, trial) so results do not depend on
// scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Rng(derive_seed(seed, key)).
  static Rng stream(std::uint64_t seed, std::uint64_t key);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, n); n must be positive. Lemire's unbiased method.
  std::size_t below(std::size_t n);
  // Standard normal via the Marsaglia polar method.
  double normal();
  // log of a Gamma(shape, 1) draw. Returned in log space so that shapes well
  // below one do not underflow.
  double log_gamma_variate(double shape);
  // Beta(a, b) draw as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  double beta(double a, double b);

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of the stream identified by `key` below `seed`. Keys may be chained:
// derive_seed(derive_seed(base, cell), trial).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept;

}  // namespace snc

#endif  // SNC_RNG_HPP_
