#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ntkit {

// Arbitrary-precision integers and exact rationals. GMP supplies the
// arithmetic; nothing in this toolkit uses floating point.
using BigInt = mpz_class;
using BigRat = mpq_class;

/// Parse a decimal integer ("-123"). Throws std::invalid_argument on junk.
BigInt parse_int(std::string_view text);

/// Parse "p" or "p/q" into a canonical rational (q > 0, lowest terms).
BigRat parse_rat(std::string_view text);

std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);  // "p/q", or "p" when q == 1

/// num/den reduced to lowest terms with positive denominator. den == 0 throws.
BigRat make_rat(const BigInt& num, const BigInt& den);

/// Non-negative gcd; gcd(0,0) == 0.
BigInt gcd(const BigInt& a, const BigInt& b);

/// Floor square root; n < 0 throws.
BigInt isqrt(const BigInt& n);

bool is_perfect_square(const BigInt& n);

/// v_p(n), the exponent of p in n. Requires n != 0 and p >= 2.
unsigned long valuation(const BigInt& n, const BigInt& p);

/// Hash-style 64-bit digest of |n|, used to derive per-input RNG seeds.
uint64_t fold_u64(const BigInt& n);

}  // namespace ntkit
