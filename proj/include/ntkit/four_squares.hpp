#pragma once

#include "ntkit/bigint.hpp"

#include <array>

namespace ntkit {

/// Threshold below which the witness is the lexicographically smallest
/// (a,b,c,d) with a >= b >= c >= d >= 0; above it a Rabin-Shallit style
/// descent returns some valid witness (deterministically seeded).
inline constexpr uint64_t kFourSquaresExactThreshold = 1'000'000;

/// a^2 + b^2 + c^2 + d^2 = n. Requires n >= 0.
std::array<BigInt, 4> four_squares(const BigInt& n);

}  // namespace ntkit
