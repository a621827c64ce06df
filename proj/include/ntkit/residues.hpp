#pragma once

#include "ntkit/bigint.hpp"

namespace ntkit {

/// Jacobi symbol (a/n). Requires n odd and positive.
int jacobi(const BigInt& a, const BigInt& n);

/// True iff r is a square in Q_p: even valuation and the unit part is a
/// quadratic residue mod p (p odd) or congruent to 1 mod 8 (p = 2).
/// Requires p prime and r != 0.
bool is_padic_square(const BigRat& r, const BigInt& p);

}  // namespace ntkit
