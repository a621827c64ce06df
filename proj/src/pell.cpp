#include "ntkit/pell.hpp"

#include <algorithm>

namespace ntkit::pell {

namespace {

void require_parameter(const BigInt& a) {
    if (a < 2) throw std::invalid_argument("pell parameter must satisfy a >= 2");
}

}  // namespace

std::vector<PellSolution> pell_sequence(const BigInt& a, unsigned long count) {
    require_parameter(a);
    BigInt d = a * a - 1;
    std::vector<PellSolution> out;
    out.reserve(count + 1);
    BigInt x = 1, y = 0;
    for (unsigned long n = 0; n <= count; ++n) {
        out.push_back({a, n, x, y});
        BigInt nx = a * x + d * y;
        y = x + a * y;
        x = nx;
    }
    return out;
}

std::pair<BigInt, BigInt> pell_pair(const BigInt& a, unsigned long n) {
    require_parameter(a);
    BigInt d = a * a - 1;
    // Binary powering of x + y*sqrt(d):
    // (x,y)^2 = (x^2 + d y^2, 2xy), (x,y)*(a,1) = (ax + dy, x + ay).
    BigInt x = 1, y = 0;
    for (int bit = static_cast<int>(8 * sizeof(n)) - 1; bit >= 0; --bit) {
        BigInt nx = x * x + d * y * y;
        y = 2 * x * y;
        x = nx;
        if ((n >> bit) & 1) {
            nx = a * x + d * y;
            y = x + a * y;
            x = nx;
        }
    }
    return {x, y};
}

bool verify_pell(const BigInt& a, const BigInt& x, const BigInt& y) {
    return x * x - (a * a - 1) * y * y == 1;
}

std::vector<std::pair<BigInt, BigInt>> enumerate_solutions_below(const BigInt& a,
                                                                 const BigInt& bound) {
    require_parameter(a);
    if (bound < 1) throw std::invalid_argument("enumeration bound must be >= 1");
    BigInt d = a * a - 1;
    std::vector<std::pair<BigInt, BigInt>> out;
    for (BigInt y = 1; y <= bound; ++y) {
        BigInt t = d * y * y + 1;
        if (mpz_perfect_square_p(t.get_mpz_t())) {
            BigInt x;
            mpz_sqrt(x.get_mpz_t(), t.get_mpz_t());
            out.emplace_back(x, y);
        }
    }
    return out;
}

DivisibilityReport divisibility_report(const BigInt& a, unsigned long m, unsigned long n) {
    require_parameter(a);
    if (m < 1 || n < 1) throw std::invalid_argument("divisibility indices must be >= 1");
    DivisibilityReport rep;
    rep.a = a;
    rep.m = m;
    rep.n = n;
    auto seq = pell_sequence(a, std::max(m, n));
    rep.ym = seq[m].y;
    rep.yn = seq[n].y;
    rep.ymsq_divides_yn = mpz_divisible_p(rep.yn.get_mpz_t(), BigInt(rep.ym * rep.ym).get_mpz_t()) != 0;
    BigInt nn(n);
    rep.ym_divides_n = mpz_divisible_p(nn.get_mpz_t(), rep.ym.get_mpz_t()) != 0;
    BigInt mym = rep.ym * m;
    rep.m_ym_divides_n = mpz_divisible_p(nn.get_mpz_t(), mym.get_mpz_t()) != 0;
    return rep;
}

}  // namespace ntkit::pell
