#include "ntkit/primality.hpp"

#include <atomic>

namespace ntkit {

namespace {

std::atomic<uint64_t> g_seed{0};

// Valid deterministic witness set for n < 3.3 * 10^24, which covers 2^64.
constexpr unsigned long kFixedWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// One Miller-Rabin round: n - 1 = 2^r * d with d odd.
bool witness_passes(const BigInt& n, const BigInt& base, const BigInt& d, unsigned long r) {
    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    BigInt nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

// splitmix64, enough to decorrelate the per-input streams.
uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void set_random_seed(uint64_t seed) { g_seed.store(seed); }
uint64_t random_seed() { return g_seed.load(); }

bool is_prime(const BigInt& n) {
    if (n <= 1) return false;
    if (n <= 3) return true;
    if (mpz_even_p(n.get_mpz_t())) return n == 2;

    for (unsigned long w : kFixedWitnesses) {
        if (n == w) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    }

    BigInt d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    for (unsigned long w : kFixedWitnesses) {
        if (!witness_passes(n, BigInt(w), d, r)) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;

    // 64 extra rounds, bases drawn from a stream seeded by (global seed, n).
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(mix(g_seed.load() ^ fold_u64(n))));
    BigInt span = n - 3;
    for (int i = 0; i < 64; ++i) {
        BigInt base = rng.get_z_range(span) + 2;  // uniform in [2, n-2]
        if (!witness_passes(n, base, d, r)) return false;
    }
    return true;
}

}  // namespace ntkit
