#include "ntkit/descent.hpp"

#include "ntkit/parallel.hpp"
#include "ntkit/residues.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace ntkit::descent {

SplitCurve::SplitCurve(BigInt e1_, BigInt e2_, BigInt e3_)
    : e1(std::move(e1_)), e2(std::move(e2_)), e3(std::move(e3_)) {
    if (e1 == e2 || e1 == e3 || e2 == e3) {
        throw std::invalid_argument("split curve needs pairwise distinct roots");
    }
}

BigInt SplitCurve::root_differences() const { return (e1 - e2) * (e1 - e3) * (e2 - e3); }

bool on_split_curve(const SplitCurve& curve, const PointQ& p) {
    if (p.infinity) return true;
    return p.y * p.y == (p.x - curve.e1) * (p.x - curve.e2) * (p.x - curve.e3);
}

std::string to_string(const Place& place) {
    return place.real ? "real" : ntkit::to_string(place.p);
}

WeierstrassModel to_weierstrass(const SplitCurve& curve) {
    BigRat shift = make_rat(curve.e1 + curve.e2 + curve.e3, 3);
    BigRat r1 = curve.e1 - shift, r2 = curve.e2 - shift, r3 = curve.e3 - shift;
    // Depressed cubic with roots r_i (they sum to zero).
    BigRat a = r1 * r2 + r1 * r3 + r2 * r3;
    BigRat b = -(r1 * r2 * r3);
    return {CurveQ(a, b), shift};
}

PointQ to_split_point(const WeierstrassModel& model, const PointQ& p) {
    if (p.infinity) return p;
    return PointQ::affine(p.x + model.shift, p.y);
}

PointQ from_split_point(const WeierstrassModel& model, const PointQ& p) {
    if (p.infinity) return p;
    return PointQ::affine(p.x - model.shift, p.y);
}

SquareClassPair descent_image(const SplitCurve& curve, const PointQ& p,
                              const FactorBudget& budget) {
    if (p.infinity) return {1, 1};
    if (!on_split_curve(curve, p)) {
        throw std::invalid_argument("descent_image: point is not on the curve");
    }
    const BigInt &e1 = curve.e1, &e2 = curve.e2, &e3 = curve.e3;
    if (p.x == e1) {
        return {squarefree_part((e1 - e2) * (e1 - e3), budget).first,
                squarefree_part(e1 - e2, budget).first};
    }
    if (p.x == e2) {
        return {squarefree_part(e2 - e1, budget).first,
                squarefree_part((e2 - e1) * (e2 - e3), budget).first};
    }
    if (p.x == e3) {
        return {squarefree_part(e3 - e1, budget).first,
                squarefree_part(e3 - e2, budget).first};
    }
    return {squarefree_class(BigRat(p.x - e1), budget), squarefree_class(BigRat(p.x - e2), budget)};
}

namespace {

// Signed squarefree divisors of d, ascending.
std::vector<BigInt> signed_squarefree_divisors(const BigInt& d, const FactorBudget& budget) {
    Factorization f = factorize(d, budget);
    if (!f.complete) {
        throw IncompleteFactorizationError("candidate enumeration: cannot factor " + ntkit::to_string(d));
    }
    std::vector<BigInt> divs{1};
    for (const auto& [prime, unused] : f.factors) {
        (void)unused;
        size_t n = divs.size();
        for (size_t i = 0; i < n; ++i) divs.push_back(divs[i] * prime);
    }
    size_t n = divs.size();
    for (size_t i = 0; i < n; ++i) divs.push_back(-divs[i]);
    std::sort(divs.begin(), divs.end());
    return divs;
}

// ---- Local square-class machinery -----------------------------------------
//
// Square classes of Q_p^* mod squares, encoded as small ints:
//   p odd: (valuation parity << 1) | (unit is a non-residue)      -> 0..3
//   p = 2: (valuation parity << 2) | ((unit mod 8) >> 1)          -> 0..7
// The trivial class (squares) is 0.

struct LocalContext {
    BigInt p;
    bool is2 = false;
    long slack = 1;  // units within p^slack of each other share a class
    long max_diff_val = 0;
    std::array<BigInt, 3> e;
    // Achievable class triples of (x-e1, x-e2, x-e3) as x runs over Q_p;
    // -1 marks a coordinate that can take any class (x can approach that root).
    std::vector<std::array<int, 3>> triples;
};

int unit_mul_code2(int a, int b) {
    // Codes 0..3 are units 1,3,5,7 mod 8.
    int u = ((2 * a + 1) * (2 * b + 1)) % 8;
    return u >> 1;
}

int class_mul(int c1, int c2, bool is2) {
    if (!is2) return c1 ^ c2;
    return ((c1 ^ c2) & 4) | unit_mul_code2(c1 & 3, c2 & 3);
}

int class_of_int(const BigInt& v, const BigInt& p, bool is2) {
    unsigned long val = valuation(v, p);
    BigInt unit;
    mpz_remove(unit.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    if (is2) {
        int ucode = static_cast<int>(mpz_fdiv_ui(unit.get_mpz_t(), 8)) >> 1;
        return static_cast<int>((val & 1) << 2) | ucode;
    }
    int nqr = mpz_jacobi(unit.get_mpz_t(), p.get_mpz_t()) == 1 ? 0 : 1;
    return static_cast<int>((val & 1) << 1) | nqr;
}

int class_of_rat(const BigRat& r, const BigInt& p, bool is2) {
    // 1/den and den are the same square class.
    return class_mul(class_of_int(r.get_num(), p, is2), class_of_int(r.get_den(), p, is2), is2);
}

// Refine the residue class {x = a mod p^t} until the square classes of all
// three x - e_i are pinned down, emitting one triple per decided leaf. A
// coordinate i with a = e_i mod p^t floats: x - e_i ranges over all of
// p^t Z_p, so once the other two are decided (guaranteed for
// t >= max_diff_val + slack) it can take any class and the leaf is a
// wildcard triple.
void collect_triples(LocalContext& ctx, const BigInt& a, long t, const BigInt& pt) {
    std::array<int, 3> cls{};
    int undecided = -1;
    bool floating = false;
    int n_undecided = 0;
    for (int i = 0; i < 3; ++i) {
        BigInt d = a - ctx.e[i];
        if (d == 0) {
            ++n_undecided;
            undecided = i;
            floating = true;
            continue;
        }
        long w = static_cast<long>(valuation(d, ctx.p));
        if (w <= t - ctx.slack) {
            cls[i] = class_of_int(d, ctx.p, ctx.is2);
        } else {
            ++n_undecided;
            undecided = i;
            floating = (w >= t);
        }
    }
    if (n_undecided == 0) {
        ctx.triples.push_back(cls);
        return;
    }
    if (n_undecided == 1 && floating && t >= ctx.max_diff_val + ctx.slack) {
        cls[undecided] = -1;
        ctx.triples.push_back(cls);
        return;
    }
    if (t > ctx.max_diff_val + ctx.slack + 8) {
        throw std::logic_error("local class refinement failed to terminate");
    }
    BigInt next = a;
    for (BigInt digit = 0; digit < ctx.p; ++digit, next += pt) {
        collect_triples(ctx, next, t + 1, BigInt(pt * ctx.p));
    }
}

LocalContext build_local_context(const SplitCurve& curve, const BigInt& p) {
    LocalContext ctx;
    ctx.p = p;
    ctx.is2 = (p == 2);
    ctx.slack = ctx.is2 ? 3 : 1;
    ctx.e = {curve.e1, curve.e2, curve.e3};
    ctx.max_diff_val = 0;
    for (const BigInt& d : {BigInt(curve.e1 - curve.e2), BigInt(curve.e1 - curve.e3),
                            BigInt(curve.e2 - curve.e3)}) {
        ctx.max_diff_val = std::max(ctx.max_diff_val, static_cast<long>(valuation(d, p)));
    }

    // x of negative valuation: for v(x) <= -1 (p odd) or <= -3 (p = 2) all
    // three x - e_i share x's class, and that class is free.
    int n_classes = ctx.is2 ? 8 : 4;
    for (int c = 0; c < n_classes; ++c) ctx.triples.push_back({c, c, c});
    if (ctx.is2) {
        // v(x) = -1, -2: the three units are coupled through x's unit mod 8.
        for (long v = 1; v <= 2; ++v) {
            BigInt pv = v == 1 ? 2 : 4;
            for (unsigned long u = 1; u < 8; u += 2) {
                std::array<int, 3> tri{};
                for (int i = 0; i < 3; ++i) {
                    BigRat val = make_rat(BigInt(u) - ctx.e[i] * pv, pv);
                    tri[i] = class_of_rat(val, ctx.p, true);
                }
                ctx.triples.push_back(tri);
            }
        }
    }

    collect_triples(ctx, 0, 0, 1);

    std::sort(ctx.triples.begin(), ctx.triples.end());
    ctx.triples.erase(std::unique(ctx.triples.begin(), ctx.triples.end()), ctx.triples.end());
    return ctx;
}

bool pair_solvable_at(const LocalContext& ctx, const SquareClassPair& pair) {
    int c1 = class_of_int(pair.b1, ctx.p, ctx.is2);
    int c2 = class_of_int(pair.b2, ctx.p, ctx.is2);
    int c3 = class_mul(c1, c2, ctx.is2);
    for (const auto& tri : ctx.triples) {
        if ((tri[0] == -1 || tri[0] == c1) && (tri[1] == -1 || tri[1] == c2) &&
            (tri[2] == -1 || tri[2] == c3)) {
            return true;
        }
    }
    return false;
}

bool pair_solvable_real(const SplitCurve& curve, const SquareClassPair& pair) {
    int s1 = sgn(pair.b1), s2 = sgn(pair.b2);
    int s3 = s1 * s2;
    std::array<BigRat, 3> roots{BigRat(curve.e1), BigRat(curve.e2), BigRat(curve.e3)};
    std::sort(roots.begin(), roots.end());
    // One sample per sign region plus the roots themselves covers every
    // achievable sign pattern of (x-e1, x-e2, x-e3).
    std::array<BigRat, 7> samples{roots[0] - 1,
                                  roots[0],
                                  (roots[0] + roots[1]) / 2,
                                  roots[1],
                                  (roots[1] + roots[2]) / 2,
                                  roots[2],
                                  roots[2] + 1};
    auto compatible = [](const BigRat& q, int want) { return sgn(q) == 0 || sgn(q) == want; };
    for (const BigRat& x : samples) {
        if (compatible(x - curve.e1, s1) && compatible(x - curve.e2, s2) &&
            compatible(x - curve.e3, s3)) {
            return true;
        }
    }
    return false;
}

std::vector<BigInt> sorted_prime_support(const BigInt& v, const FactorBudget& budget,
                                         const char* what) {
    Factorization f = factorize(v, budget);
    if (!f.complete) {
        throw IncompleteFactorizationError(std::string(what) + ": cannot factor " + ntkit::to_string(v));
    }
    std::vector<BigInt> primes;
    primes.reserve(f.factors.size());
    for (const auto& [prime, unused] : f.factors) {
        (void)unused;
        primes.push_back(prime);
    }
    return primes;  // map order: already ascending
}

// Places for a curve (and optionally one pair): the real place, 2, and the
// odd primes of the given value, ascending.
std::vector<Place> place_list(const BigInt& value, const FactorBudget& budget) {
    std::vector<Place> places{Place::real_place(), Place::finite(2)};
    for (const BigInt& p : sorted_prime_support(value, budget, "local solvability")) {
        if (p != 2) places.push_back(Place::finite(p));
    }
    return places;
}

std::optional<Place> first_obstruction(const SplitCurve& curve, const SquareClassPair& pair,
                                       const std::vector<Place>& places,
                                       const std::vector<LocalContext>& contexts) {
    for (size_t i = 0; i < places.size(); ++i) {
        if (places[i].real) {
            if (!pair_solvable_real(curve, pair)) return places[i];
        } else if (!pair_solvable_at(contexts[i - 1], pair)) {
            return places[i];
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<SquareClassPair> candidate_pairs(const SplitCurve& curve, const FactorBudget& budget) {
    auto d1 = signed_squarefree_divisors((curve.e1 - curve.e2) * (curve.e1 - curve.e3), budget);
    auto d2 = signed_squarefree_divisors((curve.e2 - curve.e1) * (curve.e2 - curve.e3), budget);
    std::vector<SquareClassPair> pairs;
    pairs.reserve(d1.size() * d2.size());
    for (const BigInt& b1 : d1) {
        for (const BigInt& b2 : d2) {
            pairs.push_back({b1, b2});
        }
    }
    return pairs;
}

bool locally_solvable_at_real(const SplitCurve& curve, const SquareClassPair& pair) {
    return pair_solvable_real(curve, pair);
}

bool locally_solvable_at_prime(const SplitCurve& curve, const SquareClassPair& pair,
                               const BigInt& p) {
    LocalContext ctx = build_local_context(curve, p);
    return pair_solvable_at(ctx, pair);
}

LocalCheck locally_solvable(const SplitCurve& curve, const SquareClassPair& pair,
                            const FactorBudget& budget) {
    if (pair.b1 == 0 || pair.b2 == 0) throw std::invalid_argument("square classes must be nonzero");
    auto places = place_list(pair.b1 * pair.b2 * curve.root_differences(), budget);
    std::vector<LocalContext> contexts;
    contexts.reserve(places.size() - 1);
    for (size_t i = 1; i < places.size(); ++i) {
        contexts.push_back(build_local_context(curve, places[i].p));
    }
    auto obstruction = first_obstruction(curve, pair, places, contexts);
    if (obstruction) return {false, obstruction};
    return {true, std::nullopt};
}

SelmerReport two_selmer(const SplitCurve& curve, unsigned jobs, const FactorBudget& budget) {
    SelmerReport report{curve, {}, 0, 0, {}, {}};
    auto candidates = candidate_pairs(curve, budget);
    // Candidate supports divide the root differences, so one place list
    // covers every pair.
    report.places_checked = place_list(curve.root_differences(), budget);
    std::vector<LocalContext> contexts;
    contexts.reserve(report.places_checked.size() - 1);
    for (size_t i = 1; i < report.places_checked.size(); ++i) {
        contexts.push_back(build_local_context(curve, report.places_checked[i].p));
    }

    std::vector<std::optional<Place>> verdicts(candidates.size());
    parallel_for_ordered(candidates.size(), jobs, [&](size_t i) {
        verdicts[i] = first_obstruction(curve, candidates[i], report.places_checked, contexts);
    });

    for (size_t i = 0; i < candidates.size(); ++i) {
        if (verdicts[i]) {
            report.obstructions.push_back({candidates[i], *verdicts[i]});
        } else {
            report.accepted.push_back(candidates[i]);
        }
    }

    // The accepted set must be a subgroup containing the 2-torsion images.
    std::set<std::pair<BigInt, BigInt>> accepted_set;
    for (const auto& pair : report.accepted) accepted_set.insert({pair.b1, pair.b2});
    auto contains = [&](const SquareClassPair& pair) {
        return accepted_set.count({pair.b1, pair.b2}) > 0;
    };
    if (!contains({1, 1})) throw ConsistencyError("identity class rejected");
    for (const PointQ& torsion :
         {PointQ::affine(BigRat(curve.e1), BigRat(0)), PointQ::affine(BigRat(curve.e2), BigRat(0)),
          PointQ::affine(BigRat(curve.e3), BigRat(0))}) {
        if (!contains(descent_image(curve, torsion, budget))) {
            throw ConsistencyError("2-torsion image rejected at " + ec::to_string(torsion));
        }
    }
    for (const auto& g : report.accepted) {
        for (const auto& h : report.accepted) {
            SquareClassPair prod{squarefree_mul(g.b1, h.b1), squarefree_mul(g.b2, h.b2)};
            if (!contains(prod)) {
                throw ConsistencyError("accepted set is not closed under multiplication");
            }
        }
    }
    size_t count = report.accepted.size();
    if (count == 0 || (count & (count - 1)) != 0) {
        throw ConsistencyError("accepted set size is not a power of two");
    }
    unsigned dim = 0;
    while ((count >> dim) > 1) ++dim;
    if (dim < 2) throw ConsistencyError("accepted set smaller than the torsion subgroup");
    report.selmer_dim = dim;
    report.selmer_rank_bound = static_cast<int>(dim) - 2;
    return report;
}

ec::TorsionResult split_point_torsion(const SplitCurve& curve, const PointQ& p) {
    if (!on_split_curve(curve, p)) {
        throw std::invalid_argument("split_point_torsion: point is not on the curve");
    }
    WeierstrassModel model = to_weierstrass(curve);
    ec::ScaledModel scaled = ec::scale_model(model.curve);
    PointQ q = ec::scale_point(from_split_point(model, p), BigRat(scaled.u));
    return ec::is_torsion(scaled.curve, q);
}

RankWindow rank_window(const SplitCurve& curve, const BigInt& search_height,
                       const PointQ* known_point, unsigned jobs, const FactorBudget& budget) {
    RankWindow window{0, 0, RankCertificate::none, two_selmer(curve, jobs, budget), std::nullopt};
    window.upper = window.selmer.selmer_rank_bound;

    WeierstrassModel model = to_weierstrass(curve);
    ec::ScaledModel scaled = ec::scale_model(model.curve);
    BigRat back = make_rat(1, scaled.u);

    if (known_point != nullptr && !known_point->infinity) {
        if (!on_split_curve(curve, *known_point)) {
            throw std::invalid_argument("rank_window: supplied point is not on the curve");
        }
        if (!split_point_torsion(curve, *known_point).torsion) {
            window.lower = 1;
            window.witness = *known_point;
        }
    }
    if (window.lower == 0 && search_height >= 1) {
        for (const PointQ& p : ec::naive_point_search(scaled.curve, search_height)) {
            if (!ec::is_torsion(scaled.curve, p).torsion) {
                window.lower = 1;
                window.witness = to_split_point(model, ec::scale_point(p, back));
                break;
            }
        }
    }
    if (window.lower == 1 && window.upper == 1) {
        window.certificate = RankCertificate::rank1;
    } else if (window.lower == 0 && window.upper == 0) {
        window.certificate = RankCertificate::rank0;
    }
    return window;
}

}  // namespace ntkit::descent
