// Copyright 2026 The dpanova Authors
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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace dpanova {

// Deterministic random number plumbing.
//
// Everything stochastic in this library is driven by xoshiro256++ engines
// that are constructed from a user seed plus a handful of context words
// ("substreams").  Two substreams with different context words are
// statistically independent for practical purposes, and a given
// (seed, context) pair always yields the same stream.  That lets
// simulations fan out across threads while producing output that is
// byte-identical to a single-threaded run: each unit of work gets its own
// engine derived from its index instead of sharing one sequential stream.

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; also used as the mixing function for seed
// derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ (Blackman and Vigna).  State is expanded from the 64-bit
// seed with SplitMix64, the recommended initialization.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) : s_{} {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  constexpr std::uint64_t operator()() { return next(); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::array<std::uint64_t, 4> s_;
};

// Hashes a seed together with context words into a fresh engine seed.
// Order-sensitive, so {a, b} and {b, a} give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = detail::mix64(seed + detail::kGolden);
  for (const std::uint64_t w : words) {
    h = detail::mix64(h ^ detail::mix64(w + detail::kGolden));
  }
  return h;
}

inline Xoshiro256pp substream(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> words) {
  return Xoshiro256pp(derive_seed(seed, words));
}

// Bit pattern of a double, for folding real-valued parameters (noise
// scales, epsilon) into substream derivation without rounding surprises.
inline std::uint64_t double_bits(double x) {
  return std::bit_cast<std::uint64_t>(x);
}

// Uniform draw strictly inside (0, 1): 52 random bits centered on the grid
// (m + 0.5) * 2^-52, so 0.0 and 1.0 are unreachable and every arithmetic
// step is exact.  Safe to pass straight to log().
template <typename Rng>
double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng.next() >> 12) + 0.5) * 0x1.0p-52;
}

// Standard normal via the Marsaglia polar method.  Rejection-based but
// fully deterministic given the engine state; the second variate of each
// accepted pair is discarded to keep call sites stateless.
template <typename Rng>
double sample_standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform_open01(rng) - 1.0;
    const double v = 2.0 * uniform_open01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace dpanova
