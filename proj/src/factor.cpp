#include "ntkit/factor.hpp"

#include "ntkit/primality.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace ntkit {

const FactorBudget& default_budget() {
    static const FactorBudget budget = [] {
        FactorBudget b;
        if (const char* env = std::getenv("NTKIT_FACTOR_BUDGET")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) b.rho_iterations = v;
        }
        return b;
    }();
    return budget;
}

BigInt Factorization::value() const {
    BigInt v = cofactor;
    for (const auto& [p, e] : factors) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return sign < 0 ? BigInt(-v) : v;
}

namespace {

// Pollard-Brent with a shared iteration budget. Returns a nontrivial factor
// of n (composite, odd, not a prime power of interest) or 0 on budget out.
BigInt pollard_brent(const BigInt& n, unsigned long& iters_left) {
    for (unsigned long c = 1; iters_left > 0; ++c) {
        BigInt x = 2, y = 2, d = 1;
        BigInt ys, q = 1;
        const unsigned long block = 128;
        unsigned long r = 1;
        while (d == 1 && iters_left > 0) {
            x = y;
            for (unsigned long i = 0; i < r && iters_left > 0; ++i) {
                y = (y * y + c) % n;
                --iters_left;
            }
            unsigned long k = 0;
            while (k < r && d == 1 && iters_left > 0) {
                ys = y;
                unsigned long lim = std::min(block, r - k);
                for (unsigned long i = 0; i < lim && iters_left > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * mpz_class(abs(x - y)) % n;
                    --iters_left;
                }
                d = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (d == n) {
            // Backtrack to find the factor the block multiplication skipped over.
            do {
                ys = (ys * ys + c) % n;
                d = gcd(BigInt(abs(x - ys)), n);
                if (iters_left == 0) break;
                --iters_left;
            } while (d == 1);
        }
        if (d != n && d != 1) return d;
        // d == n: retry with the next polynomial offset c.
    }
    return 0;
}

void split(const BigInt& m, std::map<BigInt, unsigned>& primes, BigInt& cofactor,
           unsigned long& iters_left) {
    if (m == 1) return;
    if (is_prime(m)) {
        primes[m] += 1;
        return;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        split(r, primes, cofactor, iters_left);
        split(r, primes, cofactor, iters_left);
        return;
    }
    BigInt d = pollard_brent(m, iters_left);
    if (d == 0) {
        cofactor *= m;
        return;
    }
    split(d, primes, cofactor, iters_left);
    split(BigInt(m / d), primes, cofactor, iters_left);
}

}  // namespace

Factorization factorize(const BigInt& n, const FactorBudget& budget) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    BigInt m = abs(n);

    std::map<BigInt, unsigned> primes;
    if (unsigned long twos = mpz_scan1(m.get_mpz_t(), 0); twos > 0) {
        primes[2] = twos;
        mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), twos);
    }

    for (unsigned long d = 3; d <= budget.trial_bound && d < (1ul << 31); d += 2) {
        if (mpz_cmp_ui(m.get_mpz_t(), d * d) < 0) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            primes[BigInt(d)] += 1;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        }
    }
    if (m > 1) {
        // Whatever survived trial division is either prime or needs rho.
        if (BigInt(budget.trial_bound) * budget.trial_bound > m || is_prime(m)) {
            // Below trial_bound^2 the survivor must be prime.
            primes[m] += 1;
        } else {
            unsigned long iters = budget.rho_iterations;
            split(m, primes, out.cofactor, iters);
        }
    }

    out.complete = (out.cofactor == 1);
    out.factors.assign(primes.begin(), primes.end());
    return out;
}

std::pair<BigInt, BigInt> squarefree_part(const BigInt& n, const FactorBudget& budget) {
    if (n == 0) throw std::invalid_argument("squarefree_part(0)");
    Factorization f = factorize(n, budget);
    if (!f.complete) {
        throw IncompleteFactorizationError("factorization budget exhausted on " + to_string(n));
    }
    BigInt s = f.sign, t = 1;
    for (const auto& [p, e] : f.factors) {
        if (e % 2 == 1) s *= p;
        if (e / 2 > 0) {
            BigInt pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
            t *= pe;
        }
    }
    return {s, t};
}

BigInt squarefree_class(const BigRat& r, const FactorBudget& budget) {
    if (r == 0) throw std::invalid_argument("squarefree_class(0)");
    return squarefree_part(BigInt(r.get_num() * r.get_den()), budget).first;
}

BigInt squarefree_mul(const BigInt& a, const BigInt& b) {
    BigInt g = gcd(a, b);
    return a / g * (b / g);
}

}  // namespace ntkit
