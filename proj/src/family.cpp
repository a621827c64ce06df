#include "ntkit/family.hpp"

#include "ntkit/parallel.hpp"
#include "ntkit/primality.hpp"

namespace ntkit::family {

FamilyParams::FamilyParams(BigInt a1_, BigInt a2_, BigInt a3_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)) {
    if (a1 == a2 || a1 == a3 || a2 == a3) {
        throw std::invalid_argument("family parameters must be pairwise distinct");
    }
}

BigRat f_eval(const FamilyParams& params, const BigRat& t) {
    return (t - params.a1) * (t - params.a2) * (t - params.a3);
}

FamilyMember make_member(const FamilyParams& params, const BigInt& m, const BigInt& n) {
    if (n < 1) throw std::invalid_argument("make_member: n must be >= 1");
    if (gcd(m, n) != 1) throw std::invalid_argument("make_member: m and n must be coprime");
    BigInt F = (m - params.a1 * n) * (m - params.a2 * n) * (m - params.a3 * n);
    if (F == 0) throw std::invalid_argument("make_member: m/n is a root of the base cubic");

    BigInt n3 = n * n * n;
    descent::SplitCurve curve(params.a1 * F * n3, params.a2 * F * n3, params.a3 * F * n3);
    ec::PointQ point = ec::PointQ::affine(BigRat(F * m * n * n), BigRat(F * F * n3));
    if (!descent::on_split_curve(curve, point)) {
        throw std::logic_error("tautological point failed the on-curve check");
    }
    return {params, m, n, F, std::move(curve), std::move(point), BigInt(n * F)};
}

BigInt disc_core(const FamilyMember& member) { return member.n * member.F; }

std::vector<std::pair<BigInt, BigInt>> four_primes_search(const FamilyParams& params,
                                                          const BigInt& m_max,
                                                          const BigInt& n_max) {
    std::vector<std::pair<BigInt, BigInt>> out;
    for (BigInt m = 1; m <= m_max; ++m) {
        for (BigInt n = 1; n <= n_max; ++n) {
            if (gcd(m, n) != 1) continue;
            if (!is_prime(n)) continue;
            if (!is_prime(abs(m - params.a1 * n))) continue;
            if (!is_prime(abs(m - params.a2 * n))) continue;
            if (!is_prime(abs(m - params.a3 * n))) continue;
            out.emplace_back(m, n);
        }
    }
    return out;
}

std::vector<MemberReport> rank_one_pipeline(const FamilyParams& params,
                                            const PipelineOptions& options) {
    std::vector<std::pair<BigInt, BigInt>> box;
    if (options.prime_filter) {
        box = four_primes_search(params, options.m_max, options.n_max);
    } else {
        for (BigInt m = 1; m <= options.m_max; ++m) {
            for (BigInt n = 1; n <= options.n_max; ++n) {
                if (gcd(m, n) != 1) continue;
                if ((m - params.a1 * n) * (m - params.a2 * n) * (m - params.a3 * n) == 0) continue;
                box.emplace_back(m, n);
            }
        }
    }

    std::vector<std::optional<MemberReport>> slots(box.size());
    parallel_for_ordered(box.size(), options.jobs, [&](size_t i) {
        FamilyMember member = make_member(params, box[i].first, box[i].second);
        MemberReport report{std::move(member), false, 0, 0, std::nullopt, false, {}};

        auto torsion = descent::split_point_torsion(report.member.curve, report.member.taut_point);
        report.taut_torsion = torsion.torsion;
        report.taut_order = torsion.order;
        report.rank_lower = torsion.torsion ? 0 : 1;

        try {
            report.selmer = descent::two_selmer(report.member.curve, 1, options.budget);
        } catch (const IncompleteFactorizationError& e) {
            report.inconclusive_reason = e.what();
        }

        if (report.taut_torsion && options.search_height >= 1) {
            // The built-in point degenerated; fall back to search for the
            // lower bound (does not certify — certification demands the
            // tautological point itself).
            auto model = descent::to_weierstrass(report.member.curve);
            auto scaled = ec::scale_model(model.curve);
            for (const auto& p : ec::naive_point_search(scaled.curve, options.search_height)) {
                if (!ec::is_torsion(scaled.curve, p).torsion) {
                    report.rank_lower = 1;
                    break;
                }
            }
        }

        report.certified = !report.taut_torsion && report.selmer.has_value() &&
                           report.selmer->selmer_rank_bound == 1;
        slots[i] = std::move(report);
    });

    std::vector<MemberReport> out;
    out.reserve(slots.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

}  // namespace ntkit::family
