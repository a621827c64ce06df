#pragma once

#include "ntkit/polynomial.hpp"

namespace ntkit::dioph {

/// A Diophantine set: parameters x1..xN are members iff some integer witness
/// y1..yM zeroes the polynomial.
struct DiophantineSet {
    IntPolynomial poly;
    unsigned n_params = 0;
    unsigned m_witnesses = 0;

    DiophantineSet(IntPolynomial p, unsigned n, unsigned m);
};

enum class Membership { member_with_witness, no_witness_within_bound };

/// Membership is only semi-decidable, so the search bound is part of the
/// answer: no-witness-within-bound is a statement about the box searched,
/// not about the set.
struct MembershipResult {
    Membership status = Membership::no_witness_within_bound;
    std::vector<BigInt> witness;  // empty unless member
    BigInt bound_used = 0;
};

/// Exhaustive scan of the witness box [-bound, bound]^M: max-norm shells
/// ascending, lexicographic within a shell. The first witness in that order
/// is returned, so a witness found at bound B is returned unchanged at every
/// larger bound.
MembershipResult member_search(const DiophantineSet& set, std::span<const BigInt> params,
                               const BigInt& bound);

/// The four-squares polynomial x1 - y1^2 - y2^2 - y3^2 - y4^2 as a set
/// (its members are exactly the non-negative integers).
const DiophantineSet& nonneg_set();

/// Membership witness for the non-negative set: a four-squares decomposition
/// for n >= 0 (verified by exact evaluation, bound_used = ceil(sqrt(n)));
/// for n < 0 a no-witness result with bound 0 — no box can help, sums of four
/// squares are non-negative.
MembershipResult nonneg_witness(const BigInt& n);

/// F_0 = 0, F_1 = 1, F_{n+1} = F_n + F_{n-1}.
BigInt fibonacci(unsigned long n);

}  // namespace ntkit::dioph
