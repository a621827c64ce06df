#pragma once

#include "ntkit/bigint.hpp"

#include <vector>

namespace ntkit::ec {

/// Short Weierstrass curve y^2 = x^3 + ax + b over Q. The constructor
/// rejects singular curves (4a^3 + 27b^2 == 0).
struct CurveQ {
    BigRat a, b;

    CurveQ(BigRat a_, BigRat b_);
    bool integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    BigRat discriminant() const;  // -16(4a^3 + 27b^2)
};

/// Affine point or the point at infinity O.
struct PointQ {
    bool infinity = true;
    BigRat x, y;

    static PointQ at_infinity() { return PointQ{}; }
    static PointQ affine(BigRat x, BigRat y) { return PointQ{false, std::move(x), std::move(y)}; }

    friend bool operator==(const PointQ& p, const PointQ& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.x == q.x && p.y == q.y;
    }
};

/// "O" or "(p/q, r/s)".
std::string to_string(const PointQ& p);
PointQ parse_point(std::string_view text);

bool on_curve(const CurveQ& curve, const PointQ& p);

/// Chord-tangent addition. Throws if either input is off the curve.
PointQ add(const CurveQ& curve, const PointQ& p, const PointQ& q);
PointQ neg(const CurveQ& curve, const PointQ& p);
/// Double-and-add; mul(0, P) = O, mul(-k, P) = neg(mul(k, P)).
PointQ mul(const CurveQ& curve, const BigInt& k, const PointQ& p);

struct TorsionResult {
    bool torsion = false;
    unsigned order = 0;  // minimal k <= 12 with kP = O, when torsion
};

/// Torsion test via the bound on rational torsion orders: P is torsion iff
/// kP = O for some k <= 12. Requires an integral model (scale first).
TorsionResult is_torsion(const CurveQ& curve, const PointQ& p);

/// Integral model via (x, y) -> (u^2 x, u^3 y) with the minimal positive
/// integer u clearing the denominators of a (through u^4) and b (through
/// u^6). u is computed exactly from the denominators' prime valuations.
struct ScaledModel {
    CurveQ curve;
    BigInt u;
};
ScaledModel scale_model(const CurveQ& curve);

/// Map a point through (x, y) -> (u^2 x, u^3 y); pass 1/u to map back.
PointQ scale_point(const PointQ& p, const BigRat& u);

/// All points with x = p/q^2, |p| <= height_bound, 1 <= q <= height_bound,
/// gcd(p, q) = 1, on an integral model; deduplicated, sorted by (x, y).
std::vector<PointQ> naive_point_search(const CurveQ& curve, const BigInt& height_bound);

}  // namespace ntkit::ec
