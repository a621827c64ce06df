#include "ntkit/elliptic.hpp"

#include "ntkit/factor.hpp"

#include <algorithm>

namespace ntkit::ec {

CurveQ::CurveQ(BigRat a_, BigRat b_) : a(std::move(a_)), b(std::move(b_)) {
    if (4 * a * a * a + 27 * b * b == 0) {
        throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
    }
}

BigRat CurveQ::discriminant() const { return -16 * (4 * a * a * a + 27 * b * b); }

std::string to_string(const PointQ& p) {
    if (p.infinity) return "O";
    return "(" + ntkit::to_string(p.x) + ", " + ntkit::to_string(p.y) + ")";
}

PointQ parse_point(std::string_view text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos) throw std::invalid_argument("empty point");
    text = text.substr(begin, end - begin + 1);
    if (text == "O" || text == "o") return PointQ::at_infinity();
    if (text.front() != '(' || text.back() != ')') {
        throw std::invalid_argument("point must be \"O\" or \"(x, y)\"");
    }
    text = text.substr(1, text.size() - 2);
    size_t comma = text.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("point needs two coordinates");
    auto trim = [](std::string_view s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
    };
    return PointQ::affine(parse_rat(trim(text.substr(0, comma))),
                          parse_rat(trim(text.substr(comma + 1))));
}

bool on_curve(const CurveQ& curve, const PointQ& p) {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + curve.a * p.x + curve.b;
}

namespace {

void require_on_curve(const CurveQ& curve, const PointQ& p, const char* who) {
    if (!on_curve(curve, p)) {
        throw std::invalid_argument(std::string(who) + ": point " + to_string(p) +
                                    " is not on the curve");
    }
}

// Group law without the membership re-checks; callers validate inputs once.
PointQ add_unchecked(const CurveQ& curve, const PointQ& p, const PointQ& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y == -q.y) return PointQ::at_infinity();  // also covers doubling a 2-torsion point
    }
    BigRat lambda;
    if (p.x == q.x) {
        lambda = (3 * p.x * p.x + curve.a) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    BigRat x3 = lambda * lambda - p.x - q.x;
    BigRat y3 = lambda * (p.x - x3) - p.y;
    return PointQ::affine(std::move(x3), std::move(y3));
}

}  // namespace

PointQ add(const CurveQ& curve, const PointQ& p, const PointQ& q) {
    require_on_curve(curve, p, "add");
    require_on_curve(curve, q, "add");
    return add_unchecked(curve, p, q);
}

PointQ neg(const CurveQ& curve, const PointQ& p) {
    require_on_curve(curve, p, "neg");
    if (p.infinity) return p;
    return PointQ::affine(p.x, -p.y);
}

PointQ mul(const CurveQ& curve, const BigInt& k, const PointQ& p) {
    require_on_curve(curve, p, "mul");
    BigInt n = abs(k);
    PointQ acc = PointQ::at_infinity();
    PointQ base = p;
    for (size_t bit = 0, nbits = mpz_sizeinbase(n.get_mpz_t(), 2); bit < nbits; ++bit) {
        if (mpz_tstbit(n.get_mpz_t(), bit)) acc = add_unchecked(curve, acc, base);
        if (bit + 1 < nbits) base = add_unchecked(curve, base, base);
    }
    if (k < 0 && !acc.infinity) acc.y = -acc.y;
    return acc;
}

TorsionResult is_torsion(const CurveQ& curve, const PointQ& p) {
    if (!curve.integral()) {
        throw std::invalid_argument("is_torsion needs an integral model; scale first");
    }
    require_on_curve(curve, p, "is_torsion");
    if (p.infinity) return {true, 1};
    PointQ acc = p;
    for (unsigned k = 1; k <= 12; ++k) {
        if (acc.infinity) return {true, k};
        if (k < 12) acc = add_unchecked(curve, acc, p);
    }
    return {false, 0};
}

ScaledModel scale_model(const CurveQ& curve) {
    BigInt da = curve.a.get_den(), db = curve.b.get_den();
    BigInt u = 1;
    if (da != 1 || db != 1) {
        Factorization f = factorize(da * db);
        if (!f.complete) {
            throw IncompleteFactorizationError("scale_model: cannot factor denominators");
        }
        for (const auto& [prime, unused] : f.factors) {
            (void)unused;
            unsigned long va = da == 1 ? 0 : valuation(da, prime);
            unsigned long vb = db == 1 ? 0 : valuation(db, prime);
            unsigned long e = std::max((va + 3) / 4, (vb + 5) / 6);
            BigInt pe;
            mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), e);
            u *= pe;
        }
    }
    BigRat uu(u);
    return {CurveQ(curve.a * uu * uu * uu * uu, curve.b * uu * uu * uu * uu * uu * uu), u};
}

PointQ scale_point(const PointQ& p, const BigRat& u) {
    if (p.infinity) return p;
    return PointQ::affine(p.x * u * u, p.y * u * u * u);
}

std::vector<PointQ> naive_point_search(const CurveQ& curve, const BigInt& height_bound) {
    if (!curve.integral()) {
        throw std::invalid_argument("naive_point_search needs an integral model; scale first");
    }
    BigInt A = curve.a.get_num(), B = curve.b.get_num();
    std::vector<PointQ> found;
    for (BigInt q = 1; q <= height_bound; ++q) {
        BigInt q2 = q * q, q4 = q2 * q2, q6 = q4 * q2;
        BigInt q3 = q * q2;
        for (BigInt p = -height_bound; p <= height_bound; ++p) {
            if (gcd(p, q) != 1) continue;
            BigInt num = p * p * p + A * p * q4 + B * q6;
            if (num < 0 || !mpz_perfect_square_p(num.get_mpz_t())) continue;
            BigInt s;
            mpz_sqrt(s.get_mpz_t(), num.get_mpz_t());
            BigRat x = make_rat(p, q2);
            if (s == 0) {
                found.push_back(PointQ::affine(x, BigRat(0)));
            } else {
                found.push_back(PointQ::affine(x, make_rat(s, q3)));
                found.push_back(PointQ::affine(x, make_rat(-s, q3)));
            }
        }
    }
    auto less = [](const PointQ& l, const PointQ& r) {
        int c = cmp(l.x, r.x);
        if (c != 0) return c < 0;
        return cmp(l.y, r.y) < 0;
    };
    std::sort(found.begin(), found.end(), less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace ntkit::ec
