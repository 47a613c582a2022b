// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace xnf {

/// splitmix64 step; used to spread raw seeds over the full state space so
/// that nearby seeds (seed_base + trial index) give unrelated streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// xorshift64 generator. Deliberately minimal: the same generator is what
/// a hardware PRNG block would implement, and every consumer in the library
/// draws from an explicit instance so runs are reproducible from the seed
/// alone. Not cryptographic.
class Xorshift64 {
 public:
  explicit Xorshift64(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;  // xorshift fixpoint at 0
  }

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller, cosine branch only. Non-caching on
  /// purpose: each sample consumes exactly two generator words, so the
  /// stream position after n samples is seed-independent of call sites.
  /// That fixed consumption rate is what keeps the reference solver and
  /// the crossbar pipeline on identical noise streams.
  double next_gaussian() {
    const double u1 = 1.0 - next_unit();  // (0, 1]: keeps log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  bool next_bool() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace xnf
