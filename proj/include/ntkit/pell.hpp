#pragma once

#include "ntkit/bigint.hpp"

#include <utility>
#include <vector>

namespace ntkit::pell {

/// One solution of x^2 - (a^2-1) y^2 = 1, indexed by the exponent n in
/// x_n + y_n*sqrt(a^2-1) = (a + sqrt(a^2-1))^n.
struct PellSolution {
    BigInt a;
    unsigned long index = 0;
    BigInt x, y;
};

/// (x_n, y_n) for n = 0..count via the recurrence x' = a x + (a^2-1) y,
/// y' = x + a y. Requires a >= 2. Returns count+1 entries.
std::vector<PellSolution> pell_sequence(const BigInt& a, unsigned long count);

/// Single (x_n, y_n) by binary powering; internal fast path for isolated
/// large indices.
std::pair<BigInt, BigInt> pell_pair(const BigInt& a, unsigned long n);

bool verify_pell(const BigInt& a, const BigInt& x, const BigInt& y);

/// All positive solutions with 1 <= y <= bound, found by exhaustive
/// perfect-square testing of (a^2-1) y^2 + 1; sorted by y.
/// Requires a >= 2, bound >= 1.
std::vector<std::pair<BigInt, BigInt>> enumerate_solutions_below(const BigInt& a,
                                                                 const BigInt& bound);

/// Divisibility data for one (a, m, n). Three predicates are recorded:
/// the classical criterion for y_m^2 | y_n is m*y_m | n; the commonly quoted
/// variant y_m | n is also recorded and fails already at a=2, m=2, n=4.
struct DivisibilityReport {
    BigInt a;
    unsigned long m = 0, n = 0;
    BigInt ym, yn;
    bool ymsq_divides_yn = false;
    bool ym_divides_n = false;
    bool m_ym_divides_n = false;
};

DivisibilityReport divisibility_report(const BigInt& a, unsigned long m, unsigned long n);

}  // namespace ntkit::pell
