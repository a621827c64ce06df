#include "ntkit/json_io.hpp"

namespace ntkit::io {

namespace {

json pair_json(const descent::SquareClassPair& p) {
    return json::array({to_string(p.b1), to_string(p.b2)});
}

}  // namespace

json to_json(const pell::PellSolution& s) {
    return {{"n", s.index}, {"x", to_string(s.x)}, {"y", to_string(s.y)}};
}

json to_json(const pell::DivisibilityReport& r) {
    return {{"schema", "ntkit.pell.divisibility/1"},
            {"a", to_string(r.a)},
            {"m", r.m},
            {"n", r.n},
            {"ym", to_string(r.ym)},
            {"yn", to_string(r.yn)},
            {"ymsq_divides_yn", r.ymsq_divides_yn},
            {"ym_divides_n", r.ym_divides_n},
            {"m_ym_divides_n", r.m_ym_divides_n}};
}

json to_json(const dioph::MembershipResult& r) {
    json witness = json::array();
    for (const auto& w : r.witness) witness.push_back(to_string(w));
    return {{"schema", "ntkit.dioph.membership/1"},
            {"status", r.status == dioph::Membership::member_with_witness
                           ? "member-with-witness"
                           : "no-witness-within-bound"},
            {"witness", witness},
            {"bound_used", to_string(r.bound_used)}};
}

json to_json(const descent::SelmerReport& r) {
    json accepted = json::array();
    for (const auto& p : r.accepted) accepted.push_back(pair_json(p));
    json obstructions = json::array();
    for (const auto& o : r.obstructions) {
        obstructions.push_back({{"pair", pair_json(o.pair)}, {"place", to_string(o.place)}});
    }
    json places = json::array();
    for (const auto& p : r.places_checked) places.push_back(to_string(p));
    return {{"schema", "ntkit.descent.selmer/1"},
            {"e", json::array({to_string(r.curve.e1), to_string(r.curve.e2), to_string(r.curve.e3)})},
            {"accepted", accepted},
            {"dim", r.selmer_dim},
            {"rank_bound", r.selmer_rank_bound},
            {"obstructions", obstructions},
            {"places_checked", places}};
}

json to_json(const descent::RankWindow& w) {
    json out{{"schema", "ntkit.descent.rank_window/1"},
             {"lower", w.lower},
             {"upper", w.upper},
             {"certificate", w.certificate == descent::RankCertificate::rank1   ? "rank-certified-1"
                             : w.certificate == descent::RankCertificate::rank0 ? "rank-certified-0"
                                                                                : "uncertified"},
             {"selmer", to_json(w.selmer)}};
    if (w.witness) out["witness"] = ec::to_string(*w.witness);
    return out;
}

json to_json(const family::MemberReport& r) {
    const auto& m = r.member;
    json out{{"schema", "ntkit.family.member/1"},
             {"params", json::array({to_string(m.params.a1), to_string(m.params.a2),
                                     to_string(m.params.a3)})},
             {"m", to_string(m.m)},
             {"n", to_string(m.n)},
             {"F", to_string(m.F)},
             {"e", json::array({to_string(m.curve.e1), to_string(m.curve.e2),
                                to_string(m.curve.e3)})},
             {"disc_core", to_string(m.disc_core)},
             {"taut_point", ec::to_string(m.taut_point)},
             {"taut_torsion", r.taut_torsion},
             {"rank_lower", r.rank_lower},
             {"certified", r.certified}};
    if (r.taut_torsion) out["taut_order"] = r.taut_order;
    if (r.selmer) out["selmer"] = to_json(*r.selmer);
    if (!r.inconclusive_reason.empty()) out["inconclusive_reason"] = r.inconclusive_reason;
    return out;
}

}  // namespace ntkit::io
