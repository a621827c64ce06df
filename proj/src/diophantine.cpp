#include "ntkit/diophantine.hpp"

#include "ntkit/four_squares.hpp"

#include <algorithm>

namespace ntkit::dioph {

DiophantineSet::DiophantineSet(IntPolynomial p, unsigned n, unsigned m)
    : poly(std::move(p)), n_params(n), m_witnesses(m) {
    if (n_params == 0) throw std::invalid_argument("a Diophantine set needs >= 1 parameter");
    if (n_params + m_witnesses != poly.arity) {
        throw std::invalid_argument("n_params + m_witnesses must equal the polynomial arity");
    }
}

namespace {

// Exact evaluator over a witness box. When every term provably fits __int128
// the scan runs on machine words; otherwise it falls back to mpz. Either way
// the arithmetic is exact.
struct BoxEvaluator {
    const IntPolynomial& poly;
    unsigned n_params, m;
    std::vector<BigInt> point;  // params ++ witness slots (mpz path)
    bool fast = false;
    // Fast path: per-term constant = coef * prod(param^exp), witness exponents.
    std::vector<__int128> fast_coef;
    std::vector<const unsigned*> fast_exps;

    BoxEvaluator(const DiophantineSet& set, std::span<const BigInt> params, const BigInt& bound)
        : poly(set.poly), n_params(set.n_params), m(set.m_witnesses),
          point(params.begin(), params.end()) {
        point.resize(n_params + m, BigInt(0));

        // Overflow pre-check: sum of |coef| * cap^total_degree must fit well
        // inside 128 bits, with cap covering both params and the box.
        BigInt cap = abs(bound);
        for (const auto& p : params) cap = std::max(cap, BigInt(abs(p)));
        cap = std::max(cap, BigInt(1));
        BigInt total = 0;
        for (const auto& [exps, coef] : poly.terms) {
            BigInt t = abs(coef);
            for (unsigned i = 0; i < poly.arity; ++i) {
                for (unsigned e = 0; e < exps[i]; ++e) t *= cap;
            }
            total += t;
        }
        if (total < (BigInt(1) << 120)) {
            fast = true;
            for (const auto& [exps, coef] : poly.terms) {
                BigInt c = coef;
                for (unsigned i = 0; i < n_params; ++i) {
                    for (unsigned e = 0; e < exps[i]; ++e) c *= params[i];
                }
                bool negative = c < 0;
                BigInt a = abs(c);
                size_t words = 0;
                uint64_t buf[2] = {0, 0};
                mpz_export(buf, &words, -1, 8, 0, 0, a.get_mpz_t());
                __int128 cc = (static_cast<unsigned __int128>(buf[1]) << 64) | buf[0];
                if (negative) cc = -cc;
                fast_coef.push_back(cc);
                fast_exps.push_back(exps.data());
            }
        }
    }

    bool is_zero_at(const long* w) {
        if (fast) {
            __int128 total = 0;
            for (size_t t = 0; t < fast_coef.size(); ++t) {
                __int128 mono = fast_coef[t];
                const unsigned* exps = fast_exps[t];
                for (unsigned j = 0; j < m; ++j) {
                    for (unsigned e = 0; e < exps[n_params + j]; ++e) mono *= w[j];
                }
                total += mono;
            }
            return total == 0;
        }
        for (unsigned j = 0; j < m; ++j) point[n_params + j] = w[j];
        return poly.eval(point) == 0;
    }
};

// Walk the surface {max-norm == s} of the witness box in lexicographic order:
// interior runs of the last coordinate are skipped in O(1) when no earlier
// coordinate has hit +-s yet.
template <typename Visit>
bool walk_shell(long s, unsigned m, std::vector<long>& w, unsigned i, bool extreme, Visit&& visit) {
    if (i == m) return visit(w.data());
    if (i == m - 1 && !extreme && s > 0) {
        for (long v : {-s, s}) {
            w[i] = v;
            if (visit(w.data())) return true;
        }
        return false;
    }
    for (long v = -s; v <= s; ++v) {
        w[i] = v;
        if (walk_shell(s, m, w, i + 1, extreme || v == s || v == -s, visit)) return true;
    }
    return false;
}

}  // namespace

MembershipResult member_search(const DiophantineSet& set, std::span<const BigInt> params,
                               const BigInt& bound) {
    if (params.size() != set.n_params) {
        throw std::invalid_argument("parameter tuple has wrong length");
    }
    if (bound < 0) throw std::invalid_argument("search bound must be >= 0");

    const unsigned m = set.m_witnesses;
    MembershipResult out;
    out.bound_used = bound;

    BoxEvaluator eval(set, params, bound);
    if (m == 0) {
        if (eval.is_zero_at(nullptr)) out.status = Membership::member_with_witness;
        return out;
    }

    std::vector<long> w(m, 0);
    for (BigInt shell = 0; shell <= bound; ++shell) {
        if (!shell.fits_slong_p()) {
            throw std::invalid_argument("search bound too large for an exhaustive scan");
        }
        long s = shell.get_si();
        bool found = walk_shell(s, m, w, 0, false, [&](const long* tuple) {
            return eval.is_zero_at(tuple);
        });
        if (found) {
            out.status = Membership::member_with_witness;
            out.witness.assign(w.begin(), w.end());
            return out;
        }
    }
    return out;
}

const DiophantineSet& nonneg_set() {
    static const DiophantineSet set = [] {
        auto parsed = parse_polynomial("x1 - y1^2 - y2^2 - y3^2 - y4^2");
        return DiophantineSet(parsed.poly, parsed.n_params, parsed.m_witnesses);
    }();
    return set;
}

MembershipResult nonneg_witness(const BigInt& n) {
    MembershipResult out;
    if (n < 0) {
        out.bound_used = 0;
        return out;
    }
    auto w = four_squares(n);
    std::vector<BigInt> point{n, w[0], w[1], w[2], w[3]};
    if (nonneg_set().poly.eval(point) != 0) {
        throw std::logic_error("four-squares witness failed polynomial check");
    }
    BigInt r = isqrt(n);
    if (r * r < n) r += 1;
    out.status = Membership::member_with_witness;
    out.witness.assign(w.begin(), w.end());
    out.bound_used = r;
    return out;
}

BigInt fibonacci(unsigned long n) {
    BigInt a = 0, b = 1;  // F_0, F_1
    for (unsigned long i = 0; i < n; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

}  // namespace ntkit::dioph
