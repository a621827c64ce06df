#include "ntkit/descent.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ntkit;
using namespace ntkit::descent;

namespace {

using PairSet = std::set<std::pair<BigInt, BigInt>>;

PairSet as_set(const std::vector<SquareClassPair>& pairs) {
    PairSet out;
    for (const auto& p : pairs) out.insert({p.b1, p.b2});
    return out;
}

}  // namespace

TEST_CASE("split curve construction") {
    CHECK_THROWS_AS(SplitCurve(1, 1, 2), std::invalid_argument);
    SplitCurve c(0, 5, -5);
    CHECK(c.root_differences() == (-5) * 5 * 10);
}

TEST_CASE("to_weierstrass spec cases") {
    auto sym = to_weierstrass(SplitCurve(-1, 0, 1));
    CHECK(sym.curve.a == -1);
    CHECK(sym.curve.b == 0);
    CHECK(sym.shift == 0);

    auto n5 = to_weierstrass(SplitCurve(0, 5, -5));
    CHECK(n5.curve.a == -25);
    CHECK(n5.curve.b == 0);

    auto shifted = to_weierstrass(SplitCurve(0, 1, 2));
    CHECK(shifted.shift == 1);
    CHECK(shifted.curve.a == -1);
    CHECK(shifted.curve.b == 0);

    // Point transport both ways is exact.
    PointQ split_pt = PointQ::affine(BigRat(2), BigRat(0));
    PointQ w = from_split_point(shifted, split_pt);
    CHECK(ec::on_curve(shifted.curve, w));
    CHECK(to_split_point(shifted, w) == split_pt);
}

TEST_CASE("descent_image spec cases") {
    SplitCurve c(0, 5, -5);
    CHECK(descent_image(c, PointQ::affine(BigRat(-4), BigRat(6))) == SquareClassPair{-1, -1});
    CHECK(descent_image(c, PointQ::at_infinity()) == SquareClassPair{1, 1});
    // x = e1 = 0: first coordinate from the product of differences at that root.
    CHECK(descent_image(c, PointQ::affine(BigRat(0), BigRat(0))) == SquareClassPair{-1, -5});
    // The other torsion points.
    CHECK(descent_image(c, PointQ::affine(BigRat(5), BigRat(0))) == SquareClassPair{5, 2});
    CHECK(descent_image(c, PointQ::affine(BigRat(-5), BigRat(0))) == SquareClassPair{-5, -10});

    CHECK_THROWS_AS(descent_image(c, PointQ::affine(BigRat(1), BigRat(1))), std::invalid_argument);
}

TEST_CASE("candidate_pairs enumerates signed squarefree divisors") {
    auto pairs = candidate_pairs(SplitCurve(-1, 0, 1));
    // b1 | (e1-e2)(e1-e3) = 2 -> {±1, ±2}; b2 | (e2-e1)(e2-e3) = -1 -> {±1}.
    CHECK(pairs.size() == 8);
    auto set = as_set(pairs);
    CHECK(set.count({1, 1}) == 1);
    CHECK(set.count({-2, -1}) == 1);
    CHECK(set.count({2, 2}) == 0);

    // Sorted lexicographically.
    for (size_t i = 1; i < pairs.size(); ++i) {
        bool ordered = pairs[i - 1].b1 < pairs[i].b1 ||
                       (pairs[i - 1].b1 == pairs[i].b1 && pairs[i - 1].b2 < pairs[i].b2);
        CHECK(ordered);
    }

    CHECK(candidate_pairs(SplitCurve(0, 1, 2)).size() == 8);
    CHECK(candidate_pairs(SplitCurve(0, 5, -5)).size() == 32);
}

TEST_CASE("locally_solvable spec cases") {
    SplitCurve sym(-1, 0, 1);
    auto identity = locally_solvable(sym, {1, 1});
    CHECK(identity.solvable);

    // (-1,-1) on y^2 = x^3 - x needs x <= -1 and x >= 1 at once: real failure.
    auto real_reject = locally_solvable(sym, {-1, -1});
    CHECK_FALSE(real_reject.solvable);
    REQUIRE(real_reject.obstruction.has_value());
    CHECK(real_reject.obstruction->real);

    // (-1,-1) on y^2 = x^3 - 25x is hit by the rational point (-4, 6).
    auto hit = locally_solvable(SplitCurve(0, 5, -5), {-1, -1});
    CHECK(hit.solvable);
}

TEST_CASE("two_selmer on y^2 = x^3 - x: rank bound 0") {
    auto report = two_selmer(SplitCurve(-1, 0, 1));
    CHECK(report.selmer_dim == 2);
    CHECK(report.selmer_rank_bound == 0);
    PairSet expected{{1, 1}, {1, -1}, {2, -1}, {2, 1}};
    CHECK(as_set(report.accepted) == expected);
    CHECK(report.accepted.size() + report.obstructions.size() == 8);
    REQUIRE(!report.places_checked.empty());
    CHECK(report.places_checked[0].real);
}

TEST_CASE("two_selmer on y^2 = x^3 - 25x: rank bound 1, classical accepted set") {
    auto report = two_selmer(SplitCurve(0, 5, -5));
    CHECK(report.selmer_dim == 3);
    CHECK(report.selmer_rank_bound == 1);
    PairSet expected{{1, 1},  {-1, -5}, {5, 2},  {-5, -10},
                     {-1, -1}, {1, 5},   {-5, -2}, {5, 10}};
    CHECK(as_set(report.accepted) == expected);
}

TEST_CASE("two_selmer accepted set is a subgroup and contains torsion images") {
    for (long n : {5, 6, 7}) {
        SplitCurve c(0, n, -n);
        auto report = two_selmer(c);
        auto set = as_set(report.accepted);
        CHECK(set.count({1, 1}) == 1);
        for (const auto& g : report.accepted) {
            for (const auto& h : report.accepted) {
                CHECK(set.count({squarefree_mul(g.b1, h.b1), squarefree_mul(g.b2, h.b2)}) == 1);
            }
        }
        size_t count = report.accepted.size();
        CHECK((count & (count - 1)) == 0);
        for (const BigInt& e : {c.e1, c.e2, c.e3}) {
            CHECK(set.count(
                      [&] {
                          auto img = descent_image(c, PointQ::affine(BigRat(e), BigRat(0)));
                          return std::pair<BigInt, BigInt>{img.b1, img.b2};
                      }()) == 1);
        }
    }
}

TEST_CASE("descent soundness: searched points map into the accepted set") {
    SplitCurve c(0, 5, -5);
    auto report = two_selmer(c);
    auto accepted = as_set(report.accepted);
    auto model = to_weierstrass(c);
    auto scaled = ec::scale_model(model.curve);
    BigRat back = make_rat(1, scaled.u);
    for (const auto& p : ec::naive_point_search(scaled.curve, 20)) {
        PointQ split_pt = to_split_point(model, ec::scale_point(p, back));
        REQUIRE(on_split_curve(c, split_pt));
        auto img = descent_image(c, split_pt);
        CAPTURE(ec::to_string(split_pt));
        CHECK(accepted.count({img.b1, img.b2}) == 1);
    }
}

TEST_CASE("split_point_torsion") {
    SplitCurve c(0, 5, -5);
    CHECK_FALSE(split_point_torsion(c, PointQ::affine(BigRat(-4), BigRat(6))).torsion);
    auto t = split_point_torsion(c, PointQ::affine(BigRat(5), BigRat(0)));
    CHECK(t.torsion);
    CHECK(t.order == 2);
    // A shifted curve exercises the non-trivial transport (shift 1, u = 1).
    SplitCurve shifted(0, 1, 2);
    auto t2 = split_point_torsion(shifted, PointQ::affine(BigRat(1), BigRat(0)));
    CHECK(t2.torsion);
}

TEST_CASE("rank_window spec cases") {
    auto certified = rank_window(SplitCurve(0, 5, -5), 10);
    CHECK(certified.lower == 1);
    CHECK(certified.upper == 1);
    CHECK(certified.certificate == RankCertificate::rank1);
    REQUIRE(certified.witness.has_value());
    CHECK_FALSE(split_point_torsion(SplitCurve(0, 5, -5), *certified.witness).torsion);

    auto zero = rank_window(SplitCurve(-1, 0, 1), 10);
    CHECK(zero.lower == 0);
    CHECK(zero.upper == 0);
    CHECK(zero.certificate == RankCertificate::rank0);

    // Caller-supplied point replaces the search.
    PointQ known = PointQ::affine(BigRat(-4), BigRat(6));
    auto with_point = rank_window(SplitCurve(0, 5, -5), 0, &known);
    CHECK(with_point.lower == 1);
    CHECK(with_point.certificate == RankCertificate::rank1);

    CHECK(zero.lower <= zero.upper);
    CHECK(certified.lower <= certified.upper);
}
