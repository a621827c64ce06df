#pragma once

#include "ntkit/elliptic.hpp"
#include "ntkit/factor.hpp"

#include <optional>
#include <vector>

namespace ntkit::descent {

using ec::CurveQ;
using ec::PointQ;

/// y^2 = (x - e1)(x - e2)(x - e3) with distinct integer roots: full rational
/// 2-torsion by construction, which is what complete 2-descent needs.
struct SplitCurve {
    BigInt e1, e2, e3;

    SplitCurve(BigInt e1_, BigInt e2_, BigInt e3_);
    /// (e1-e2)(e1-e3)(e2-e3); its square is the cubic discriminant.
    BigInt root_differences() const;
};

bool on_split_curve(const SplitCurve& curve, const PointQ& p);

/// A class in Q*/Q*^2 x Q*/Q*^2, stored as signed squarefree integers.
struct SquareClassPair {
    BigInt b1, b2;
    friend bool operator==(const SquareClassPair&, const SquareClassPair&) = default;
};

struct Place {
    bool real = false;
    BigInt p = 0;

    static Place real_place() { return {true, 0}; }
    static Place finite(BigInt prime) { return {false, std::move(prime)}; }
    friend bool operator==(const Place&, const Place&) = default;
};
std::string to_string(const Place& place);

struct Obstruction {
    SquareClassPair pair;
    Place place;
};

/// Internal consistency failure (accepted set not a group, torsion image
/// rejected, ...). Indicates a local-solvability bug, never bad input.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

struct SelmerReport {
    SplitCurve curve;
    std::vector<SquareClassPair> accepted;  // sorted; a group under squarefree multiplication
    unsigned selmer_dim = 0;                // log2(#accepted)
    int selmer_rank_bound = 0;              // selmer_dim - 2 (full 2-torsion accounts for 2)
    std::vector<Obstruction> obstructions;  // rejected pairs with their first failing place
    std::vector<Place> places_checked;      // real place, then primes ascending
};

/// Short Weierstrass model of the split curve: x_split = x_short + shift with
/// shift = (e1+e2+e3)/3. Point transport is exact in both directions.
struct WeierstrassModel {
    CurveQ curve;
    BigRat shift;
};
WeierstrassModel to_weierstrass(const SplitCurve& curve);
PointQ to_split_point(const WeierstrassModel& model, const PointQ& p);
PointQ from_split_point(const WeierstrassModel& model, const PointQ& p);

/// Image of a point under the descent map to square classes of
/// (x - e1, x - e2). O maps to (1, 1); at a 2-torsion point the vanishing
/// coordinate is replaced by the product of root differences at that root.
SquareClassPair descent_image(const SplitCurve& curve, const PointQ& p,
                              const FactorBudget& budget = default_budget());

/// The finite superset that contains the 2-Selmer group: b1 over signed
/// squarefree divisors of (e1-e2)(e1-e3), b2 over signed squarefree divisors
/// of (e2-e1)(e2-e3); lexicographically sorted.
std::vector<SquareClassPair> candidate_pairs(const SplitCurve& curve,
                                             const FactorBudget& budget = default_budget());

struct LocalCheck {
    bool solvable = false;
    std::optional<Place> obstruction;  // first failing place when not solvable
};

/// Everywhere-local solvability of the homogeneous space attached to a pair:
/// x - e1 = b1 u^2, x - e2 = b2 v^2, x - e3 = b1 b2 w^2 must have a common
/// solution over R and over Q_p for p = 2 and every prime dividing
/// b1 b2 (e1-e2)(e1-e3)(e2-e3). Places are checked real-first, then primes
/// ascending; the first failure is reported.
LocalCheck locally_solvable(const SplitCurve& curve, const SquareClassPair& pair,
                            const FactorBudget& budget = default_budget());

/// Single-place queries behind the same machinery.
bool locally_solvable_at_real(const SplitCurve& curve, const SquareClassPair& pair);
bool locally_solvable_at_prime(const SplitCurve& curve, const SquareClassPair& pair,
                               const BigInt& p);

/// Complete 2-descent: filter candidate_pairs by local solvability, verify
/// the accepted set is a group, and report dim and the rank bound.
SelmerReport two_selmer(const SplitCurve& curve, unsigned jobs = 1,
                        const FactorBudget& budget = default_budget());

/// Torsion test for a point on the split model (transports to an integral
/// short Weierstrass model internally).
ec::TorsionResult split_point_torsion(const SplitCurve& curve, const PointQ& p);

enum class RankCertificate { none, rank0, rank1 };

struct RankWindow {
    int lower = 0;  // 1 iff a non-torsion point was found
    int upper = 0;  // selmer_rank_bound
    RankCertificate certificate = RankCertificate::none;
    SelmerReport selmer;
    std::optional<PointQ> witness;  // non-torsion point on the split model
};

/// Rank lower bound from point search (plus an optional caller-supplied
/// point on the split model), upper bound from two_selmer. lower == upper
/// pins the rank: (1,1) certifies rank 1, (0,0) certifies rank 0.
RankWindow rank_window(const SplitCurve& curve, const BigInt& search_height,
                       const PointQ* known_point = nullptr, unsigned jobs = 1,
                       const FactorBudget& budget = default_budget());

}  // namespace ntkit::descent
