#pragma once

#include "ntkit/bigint.hpp"

#include <utility>
#include <vector>

namespace ntkit {

struct FactorBudget {
    unsigned long trial_bound = 1'000'000;
    unsigned long rho_iterations = 4'000'000;
};

/// Default budget; rho_iterations can be overridden with the
/// NTKIT_FACTOR_BUDGET environment variable (read once).
const FactorBudget& default_budget();

/// Raised when an operation needs a complete factorization and the budget
/// ran out. Distinct from precondition errors so callers can tag the result
/// inconclusive instead of crashing.
struct IncompleteFactorizationError : std::runtime_error {
    explicit IncompleteFactorizationError(const std::string& what)
        : std::runtime_error(what) {}
};

struct Factorization {
    int sign = 1;                                   // +1 or -1
    std::vector<std::pair<BigInt, unsigned>> factors;  // strictly increasing primes
    BigInt cofactor = 1;  // composite remainder when the budget ran out, else 1
    bool complete = true;

    /// sign * prod p^e * cofactor — reproduces the input exactly.
    BigInt value() const;
};

/// Trial division to budget.trial_bound, then Pollard-Brent rho within
/// budget.rho_iterations. n == 0 throws. Incomplete results are returned,
/// not thrown.
Factorization factorize(const BigInt& n, const FactorBudget& budget = default_budget());

/// n = s * t^2 with s squarefree, sign(s) = sign(n), t > 0. Throws on n == 0
/// and IncompleteFactorizationError when the budget runs out.
std::pair<BigInt, BigInt> squarefree_part(const BigInt& n,
                                          const FactorBudget& budget = default_budget());

/// Squarefree part of a nonzero rational's square class: squarefree_part of
/// num*den (same class in Q*/Q*^2).
BigInt squarefree_class(const BigRat& r, const FactorBudget& budget = default_budget());

/// Squarefree representative of the product of two squarefree classes.
/// No factorization needed: ab / gcd(a,b)^2.
BigInt squarefree_mul(const BigInt& a, const BigInt& b);

}  // namespace ntkit
