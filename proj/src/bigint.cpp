#include "ntkit/bigint.hpp"

namespace ntkit {

BigInt parse_int(std::string_view text) {
    BigInt v;
    if (text.empty() || mpz_set_str(v.get_mpz_t(), std::string(text).c_str(), 10) != 0) {
        throw std::invalid_argument("not a decimal integer: \"" + std::string(text) + "\"");
    }
    return v;
}

BigRat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return BigRat(parse_int(text));
    }
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    return make_rat(num, den);
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRat& v) { return v.get_str(); }

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt of a negative number");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const BigInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

unsigned long valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
    BigInt rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

uint64_t fold_u64(const BigInt& n) {
    // FNV-style fold of the limbs; only used for seed derivation.
    uint64_t h = 0xcbf29ce484222325ULL;
    const mpz_srcptr z = n.get_mpz_t();
    int size = std::abs(z->_mp_size);
    for (int i = 0; i < size; ++i) {
        h = (h ^ static_cast<uint64_t>(z->_mp_d[i])) * 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ntkit
