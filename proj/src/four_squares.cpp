#include "ntkit/four_squares.hpp"

#include "ntkit/primality.hpp"

#include <algorithm>
#include <cmath>

namespace ntkit {

namespace {

uint64_t u_isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Smallest v with k*v^2 >= x.
uint64_t ceil_sqrt_div(uint64_t x, uint64_t k) {
    uint64_t v = u_isqrt(x / k);
    while (k * v * v < x) ++v;
    return v;
}

// Lexicographically smallest (a,b,c,d), a >= b >= c >= d >= 0. Exhaustive,
// so only used below kFourSquaresExactThreshold.
std::array<BigInt, 4> four_squares_small(uint64_t n) {
    for (uint64_t a = ceil_sqrt_div(n, 4); a * a <= n; ++a) {
        uint64_t r1 = n - a * a;
        uint64_t bmax = std::min(a, u_isqrt(r1));
        for (uint64_t b = ceil_sqrt_div(r1, 3); b <= bmax; ++b) {
            uint64_t r2 = r1 - b * b;
            uint64_t cmax = std::min(b, u_isqrt(r2));
            for (uint64_t c = ceil_sqrt_div(r2, 2); c <= cmax; ++c) {
                uint64_t d2 = r2 - c * c;
                uint64_t d = u_isqrt(d2);
                if (d * d == d2) {
                    return {BigInt(static_cast<unsigned long>(a)),
                            BigInt(static_cast<unsigned long>(b)),
                            BigInt(static_cast<unsigned long>(c)),
                            BigInt(static_cast<unsigned long>(d))};
                }
            }
        }
    }
    throw std::logic_error("four_squares_small: no witness (unreachable)");
}

// p = s^2 + t^2 for a prime p = 1 mod 4, via sqrt(-1) mod p and the
// Euclidean remainder pair below sqrt(p).
bool two_squares_prime(const BigInt& p, BigInt& s, BigInt& t) {
    BigInt z = 0;
    BigInt exp = (p - 1) / 4;
    for (unsigned long g = 2; g < 1000; ++g) {
        BigInt cand;
        BigInt base(g);
        mpz_powm(cand.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
        if ((cand * cand) % p == p - 1) {
            z = cand;
            break;
        }
    }
    if (z == 0) return false;
    BigInt a = p, b = z;
    while (b * b > p) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    BigInt c = a % b;
    if (b * b + c * c != p) return false;
    s = b;
    t = c;
    return true;
}

// m = x^2 + y^2 + z^2 for m != 0,4,7 mod 8. Deterministic descending scan:
// peel x of the right parity and look for a prime (or 2*prime) remainder.
bool three_squares(const BigInt& m, BigInt& x, BigInt& y, BigInt& z) {
    unsigned long m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
    BigInt x0;
    mpz_sqrt(x0.get_mpz_t(), m.get_mpz_t());
    bool want_odd_x = (m8 == 2 || m8 == 6 || m8 == 3);
    if ((mpz_odd_p(x0.get_mpz_t()) != 0) != want_odd_x) x0 -= 1;

    for (BigInt cx = x0; cx >= 0; cx -= 2) {
        BigInt q = m - cx * cx;
        if (q == 0) {
            x = cx; y = 0; z = 0;
            return true;
        }
        if (m8 == 3) {
            // q = 2 mod 8; q/2 odd and = 1 mod 4.
            BigInt h = q / 2;
            if (h == 1) {
                x = cx; y = 1; z = 1;
                return true;
            }
            BigInt s, t;
            if (is_prime(h) && two_squares_prime(h, s, t)) {
                x = cx; y = s + t; z = abs(s - t);
                return true;
            }
        } else {
            // q = 1 mod 4.
            if (q == 1) {
                x = cx; y = 1; z = 0;
                return true;
            }
            if (q == 2) {
                x = cx; y = 1; z = 1;
                return true;
            }
            if (mpz_perfect_square_p(q.get_mpz_t())) {
                BigInt w;
                mpz_sqrt(w.get_mpz_t(), q.get_mpz_t());
                x = cx; y = w; z = 0;
                return true;
            }
            BigInt s, t;
            if (is_prime(q) && two_squares_prime(q, s, t)) {
                x = cx; y = s; z = t;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::array<BigInt, 4> four_squares(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("four_squares of a negative number");
    if (n < static_cast<long>(kFourSquaresExactThreshold)) {
        return four_squares_small(n.get_ui());
    }

    BigInt m = n, scale = 1;
    while (mpz_fdiv_ui(m.get_mpz_t(), 4) == 0) {
        m /= 4;
        scale *= 2;
    }
    if (m < static_cast<long>(kFourSquaresExactThreshold)) {
        auto w = four_squares_small(m.get_ui());
        for (auto& v : w) v *= scale;
        return w;
    }

    std::array<BigInt, 4> out;
    if (mpz_fdiv_ui(m.get_mpz_t(), 8) == 7) {
        // Peel one square d^2, d = 2 mod 4, so the remainder is 3 mod 8.
        BigInt d;
        mpz_sqrt(d.get_mpz_t(), m.get_mpz_t());
        while (mpz_fdiv_ui(d.get_mpz_t(), 4) != 2) d -= 1;
        BigInt x, y, z;
        for (;; d -= 4) {
            if (d < 2) throw std::runtime_error("four_squares: descent failed");
            if (three_squares(m - d * d, x, y, z)) break;
        }
        out = {d, x, y, z};
    } else {
        BigInt x, y, z;
        if (!three_squares(m, x, y, z)) {
            throw std::runtime_error("four_squares: descent failed");
        }
        out = {x, y, z, 0};
    }
    std::sort(out.begin(), out.end(), [](const BigInt& a, const BigInt& b) { return a > b; });
    for (auto& v : out) v *= scale;

    if (out[0] * out[0] + out[1] * out[1] + out[2] * out[2] + out[3] * out[3] != n) {
        throw std::logic_error("four_squares: witness failed re-summation");
    }
    return out;
}

}  // namespace ntkit
