// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_TIME_HPP
#define PCERT_TIME_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace pcert {

/// Simulated time: seconds since a fixed epoch. All validity logic takes an
/// Instant explicitly; nothing in the library reads the wall clock.
struct Instant {
  std::uint64_t seconds = 0;

  auto operator<=>(const Instant&) const = default;
};

constexpr Instant operator+(Instant t, std::uint64_t s) {
  return Instant{t.seconds + s};
}

/// Half-open window [not_before, not_after).
struct ValidityPeriod {
  Instant not_before;
  Instant not_after;

  ValidityPeriod(Instant nb, Instant na) : not_before(nb), not_after(na) {
    if (!(not_before < not_after))
      throw std::invalid_argument("ValidityPeriod: not_before must precede not_after");
  }

  bool contains(Instant t) const { return not_before <= t && t < not_after; }

  bool operator==(const ValidityPeriod&) const = default;
};

constexpr std::uint64_t kSecondsPerHour = 3600;
constexpr std::uint64_t kSecondsPerDay = 86400;

}  // namespace pcert

#endif  // PCERT_TIME_HPP
