#include "ntkit/residues.hpp"

#include "ntkit/primality.hpp"

namespace ntkit {

int jacobi(const BigInt& a, const BigInt& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t())) {
        throw std::invalid_argument("jacobi symbol needs odd positive n");
    }
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

bool is_padic_square(const BigRat& r, const BigInt& p) {
    if (r == 0) throw std::invalid_argument("is_padic_square(0)");
    if (!is_prime(p)) throw std::invalid_argument("is_padic_square: p must be prime");

    BigInt num = r.get_num(), den = r.get_den();
    long val = static_cast<long>(valuation(num, p)) - static_cast<long>(valuation(den, p));
    if (val % 2 != 0) return false;

    // Unit part: strip p from num and den; the class of num/den matches num*den.
    BigInt rest;
    mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    BigInt u = rest;
    mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    u *= rest;

    if (p == 2) {
        return mpz_fdiv_ui(u.get_mpz_t(), 8) == 1;  // floor mod, so negatives land right
    }
    return jacobi(u, p) == 1;
}

}  // namespace ntkit
