// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace xnf {

/// Hardware activity events accumulated while solving. Both backends fill
/// this in: the crossbar pipeline counts what it actually exercises, and
/// the reference solver counts what the equivalent pipeline iteration
/// would exercise, so energy estimates are comparable across backends.
struct ActivityCounts {
  std::uint64_t iterations = 0;        // pipeline steps (including stalls)
  std::uint64_t row_events = 0;        // clause rows read in the main array
  std::uint64_t column_events = 0;     // column drive events across both passes
  std::uint64_t comparator_ops = 0;    // threshold comparators fired (CNF rows)
  std::uint64_t adc_ops = 0;           // multi-level count conversions (XOR rows)
  std::uint64_t prng_words = 0;        // Gaussian noise samples drawn
  std::uint64_t dac_events = 0;        // noise values injected onto gain lines
  std::uint64_t wta_ops = 0;           // winner-take-all selections
  std::uint64_t register_updates = 0;  // assignment register writes

  ActivityCounts& operator+=(const ActivityCounts& o) {
    iterations += o.iterations;
    row_events += o.row_events;
    column_events += o.column_events;
    comparator_ops += o.comparator_ops;
    adc_ops += o.adc_ops;
    prng_words += o.prng_words;
    dac_events += o.dac_events;
    wta_ops += o.wta_ops;
    register_updates += o.register_updates;
    return *this;
  }

  friend ActivityCounts operator+(ActivityCounts a, const ActivityCounts& b) { return a += b; }
  friend bool operator==(const ActivityCounts&, const ActivityCounts&) = default;
};

}  // namespace xnf
