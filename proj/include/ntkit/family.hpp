#pragma once

#include "ntkit/descent.hpp"

#include <optional>

namespace ntkit::family {

/// Fixed roots of the base cubic f(x) = (x - a1)(x - a2)(x - a3).
struct FamilyParams {
    BigInt a1, a2, a3;

    FamilyParams(BigInt a1_, BigInt a2_, BigInt a3_);
};

/// One (m, n) instance in integral form. With F = (m - a1 n)(m - a2 n)(m - a3 n)
/// (so f(m/n) = F / n^3), scaling the rational member by u = n^3 gives roots
/// e_i = a_i F n^3 and the built-in point (F m n^2, F^2 n^3). The point's
/// y-coordinate is f(m/n)^2 scaled by n^9: prod(f*m/n - a_i f) = f^3 * f(m/n)
/// = f^4, a perfect square by construction.
struct FamilyMember {
    FamilyParams params;
    BigInt m, n;
    BigInt F;
    descent::SplitCurve curve;
    ec::PointQ taut_point;
    BigInt disc_core;  // n * F = n (m - a1 n)(m - a2 n)(m - a3 n)
};

/// Exact (t - a1)(t - a2)(t - a3).
BigRat f_eval(const FamilyParams& params, const BigRat& t);

/// Requires n >= 1, gcd(m, n) = 1, and m/n not a root (F != 0). The
/// tautological point is verified on-curve before returning.
FamilyMember make_member(const FamilyParams& params, const BigInt& m, const BigInt& n);

BigInt disc_core(const FamilyMember& member);

/// All coprime (m, n) with 1 <= m <= m_max, 1 <= n <= n_max, n prime and
/// every |m - a_i n| prime (absolute values; negative form values are
/// accepted through their absolute value, signs are not primes). Row-major:
/// ascending m outer, ascending n inner.
std::vector<std::pair<BigInt, BigInt>> four_primes_search(const FamilyParams& params,
                                                          const BigInt& m_max,
                                                          const BigInt& n_max);

struct MemberReport {
    FamilyMember member;
    bool taut_torsion = false;
    unsigned taut_order = 0;  // when torsion
    int rank_lower = 0;       // 1 iff a non-torsion point is known
    std::optional<descent::SelmerReport> selmer;
    bool certified = false;            // non-torsion tautological point and Selmer bound 1
    std::string inconclusive_reason;   // nonempty when descent could not finish
};

struct PipelineOptions {
    BigInt m_max = 0, n_max = 0;
    BigInt search_height = 0;  // fallback point search when the tautological point is torsion
    bool prime_filter = true;  // false: all coprime non-degenerate (m, n) in the box
    unsigned jobs = 1;
    FactorBudget budget = default_budget();
};

/// The end-to-end rank-1 certification pipeline: for each (m, n) in the box
/// (four_primes_search order, or all coprime pairs when the prime filter is
/// off), build the member, test the tautological point for torsion, run the
/// 2-descent, and tag members with a non-torsion built-in point and Selmer
/// bound 1 as rank-certified-1. Budget failures mark the member inconclusive
/// and never drop it. Output order and content do not depend on jobs.
std::vector<MemberReport> rank_one_pipeline(const FamilyParams& params,
                                            const PipelineOptions& options);

}  // namespace ntkit::family
