#pragma once

#include "ntkit/bigint.hpp"

namespace ntkit {

/// Primality test. Deterministic and correct for |n| < 2^64 (fixed
/// Miller-Rabin witness set); above that, 64 pseudo-random rounds on top of
/// the fixed set, error < 2^-128. Bases are seeded from the input (and the
/// global seed), so the answer is reproducible and the function stays pure.
/// n <= 1 returns false.
bool is_prime(const BigInt& n);

/// Global seed mixed into every randomized internal (primality rounds above
/// 64 bits, randomized four-squares descent). Defaults to 0.
void set_random_seed(uint64_t seed);
uint64_t random_seed();

}  // namespace ntkit
