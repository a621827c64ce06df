// Python bindings for the ntkit core. Integers cross the boundary as native
// python ints (arbitrary precision), rationals as fractions.Fraction.

#include "ntkit/descent.hpp"
#include "ntkit/diophantine.hpp"
#include "ntkit/family.hpp"
#include "ntkit/four_squares.hpp"
#include "ntkit/pell.hpp"
#include "ntkit/primality.hpp"
#include "ntkit/residues.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace pybind11::detail {

template <>
struct type_caster<ntkit::BigInt> {
    PYBIND11_TYPE_CASTER(ntkit::BigInt, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = ntkit::parse_int(std::string(py::str(src)));
        return true;
    }
    static handle cast(const ntkit::BigInt& v, return_value_policy, handle) {
        return PyLong_FromString(ntkit::to_string(v).c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<ntkit::BigRat> {
    PYBIND11_TYPE_CASTER(ntkit::BigRat, const_name("Fraction"));

    bool load(handle src, bool) {
        if (PyFloat_Check(src.ptr())) return false;  // no silent binary floats
        object fraction = module_::import("fractions").attr("Fraction");
        object frac;
        try {
            frac = fraction(reinterpret_borrow<object>(src));
        } catch (const error_already_set&) {
            return false;
        }
        value = ntkit::parse_rat(std::string(py::str(frac)));
        return true;
    }
    static handle cast(const ntkit::BigRat& v, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        return fraction(ntkit::to_string(v)).release();
    }
};

}  // namespace pybind11::detail

namespace {

ntkit::ec::PointQ make_point(py::object x, py::object y) {
    return ntkit::ec::PointQ::affine(py::cast<ntkit::BigRat>(x), py::cast<ntkit::BigRat>(y));
}

}  // namespace

PYBIND11_MODULE(_ntkit, m) {
    m.doc() = "Exact-arithmetic number theory toolkit: Pell sequences, Diophantine "
              "sets, elliptic curves over Q, complete 2-descent, rank-1 pipeline";
    m.attr("__version__") = NTKIT_VERSION;

    // ---- core number theory ----
    m.def("gcd", &ntkit::gcd, py::arg("a"), py::arg("b"));
    m.def("is_prime", &ntkit::is_prime, py::arg("n"));
    m.def("jacobi", &ntkit::jacobi, py::arg("a"), py::arg("n"));
    m.def("is_padic_square", &ntkit::is_padic_square, py::arg("r"), py::arg("p"));
    m.def(
        "squarefree_part", [](const ntkit::BigInt& n) { return ntkit::squarefree_part(n); },
        py::arg("n"), "n = s * t^2 with s squarefree; returns (s, t)");
    m.def(
        "four_squares",
        [](const ntkit::BigInt& n) {
            auto w = ntkit::four_squares(n);
            return py::make_tuple(w[0], w[1], w[2], w[3]);
        },
        py::arg("n"));

    py::class_<ntkit::Factorization>(m, "Factorization")
        .def_readonly("sign", &ntkit::Factorization::sign)
        .def_readonly("factors", &ntkit::Factorization::factors)
        .def_readonly("cofactor", &ntkit::Factorization::cofactor)
        .def_readonly("complete", &ntkit::Factorization::complete)
        .def("value", &ntkit::Factorization::value);
    m.def(
        "factorize", [](const ntkit::BigInt& n) { return ntkit::factorize(n); }, py::arg("n"));

    // ---- pell ----
    py::class_<ntkit::pell::PellSolution>(m, "PellSolution")
        .def_readonly("a", &ntkit::pell::PellSolution::a)
        .def_readonly("index", &ntkit::pell::PellSolution::index)
        .def_readonly("x", &ntkit::pell::PellSolution::x)
        .def_readonly("y", &ntkit::pell::PellSolution::y);
    py::class_<ntkit::pell::DivisibilityReport>(m, "DivisibilityReport")
        .def_readonly("a", &ntkit::pell::DivisibilityReport::a)
        .def_readonly("m", &ntkit::pell::DivisibilityReport::m)
        .def_readonly("n", &ntkit::pell::DivisibilityReport::n)
        .def_readonly("ym", &ntkit::pell::DivisibilityReport::ym)
        .def_readonly("yn", &ntkit::pell::DivisibilityReport::yn)
        .def_readonly("ymsq_divides_yn", &ntkit::pell::DivisibilityReport::ymsq_divides_yn)
        .def_readonly("ym_divides_n", &ntkit::pell::DivisibilityReport::ym_divides_n)
        .def_readonly("m_ym_divides_n", &ntkit::pell::DivisibilityReport::m_ym_divides_n);
    m.def("pell_sequence", &ntkit::pell::pell_sequence, py::arg("a"), py::arg("count"));
    m.def("verify_pell", &ntkit::pell::verify_pell, py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("pell_enumerate_below", &ntkit::pell::enumerate_solutions_below, py::arg("a"),
          py::arg("bound"));
    m.def("pell_divisibility", &ntkit::pell::divisibility_report, py::arg("a"), py::arg("m"),
          py::arg("n"));

    // ---- diophantine ----
    m.def("fibonacci", &ntkit::dioph::fibonacci, py::arg("n"));
    m.def(
        "member_search",
        [](const std::string& poly, const std::vector<ntkit::BigInt>& params,
           const ntkit::BigInt& bound) {
            auto parsed = ntkit::dioph::parse_polynomial(poly);
            ntkit::dioph::DiophantineSet set(parsed.poly, parsed.n_params, parsed.m_witnesses);
            auto r = ntkit::dioph::member_search(set, params, bound);
            py::dict out;
            out["member"] = r.status == ntkit::dioph::Membership::member_with_witness;
            out["witness"] = r.witness;
            out["bound_used"] = r.bound_used;
            return out;
        },
        py::arg("poly"), py::arg("params"), py::arg("bound"),
        "Exhaustive witness search over the box [-bound, bound]^M, shell by shell");
    m.def(
        "nonneg_witness",
        [](const ntkit::BigInt& n) {
            auto r = ntkit::dioph::nonneg_witness(n);
            py::dict out;
            out["member"] = r.status == ntkit::dioph::Membership::member_with_witness;
            out["witness"] = r.witness;
            out["bound_used"] = r.bound_used;
            return out;
        },
        py::arg("n"));

    // ---- elliptic ----
    py::class_<ntkit::ec::PointQ>(m, "Point")
        .def_static("infinity", &ntkit::ec::PointQ::at_infinity)
        .def(py::init(&make_point), py::arg("x"), py::arg("y"))
        .def_readonly("is_infinity", &ntkit::ec::PointQ::infinity)
        .def_property_readonly("x", [](const ntkit::ec::PointQ& p) { return p.x; })
        .def_property_readonly("y", [](const ntkit::ec::PointQ& p) { return p.y; })
        .def("__eq__",
             [](const ntkit::ec::PointQ& p, const ntkit::ec::PointQ& q) { return p == q; })
        .def("__repr__", [](const ntkit::ec::PointQ& p) { return ntkit::ec::to_string(p); });

    py::class_<ntkit::ec::CurveQ>(m, "Curve")
        .def(py::init<ntkit::BigRat, ntkit::BigRat>(), py::arg("a"), py::arg("b"))
        .def_property_readonly("a", [](const ntkit::ec::CurveQ& c) { return c.a; })
        .def_property_readonly("b", [](const ntkit::ec::CurveQ& c) { return c.b; })
        .def("discriminant", &ntkit::ec::CurveQ::discriminant)
        .def("on_curve",
             [](const ntkit::ec::CurveQ& c, const ntkit::ec::PointQ& p) {
                 return ntkit::ec::on_curve(c, p);
             })
        .def("add",
             [](const ntkit::ec::CurveQ& c, const ntkit::ec::PointQ& p,
                const ntkit::ec::PointQ& q) { return ntkit::ec::add(c, p, q); })
        .def("neg", [](const ntkit::ec::CurveQ& c,
                       const ntkit::ec::PointQ& p) { return ntkit::ec::neg(c, p); })
        .def("mul",
             [](const ntkit::ec::CurveQ& c, const ntkit::BigInt& k, const ntkit::ec::PointQ& p) {
                 return ntkit::ec::mul(c, k, p);
             })
        .def("is_torsion",
             [](const ntkit::ec::CurveQ& c, const ntkit::ec::PointQ& p) {
                 auto t = ntkit::ec::is_torsion(c, p);
                 return py::make_tuple(t.torsion, t.order);
             })
        .def("scale_model",
             [](const ntkit::ec::CurveQ& c) {
                 auto s = ntkit::ec::scale_model(c);
                 return py::make_tuple(s.curve, s.u);
             })
        .def("search",
             [](const ntkit::ec::CurveQ& c, const ntkit::BigInt& height) {
                 return ntkit::ec::naive_point_search(c, height);
             })
        .def("__repr__", [](const ntkit::ec::CurveQ& c) {
            return "Curve(a=" + ntkit::to_string(c.a) + ", b=" + ntkit::to_string(c.b) + ")";
        });

    // ---- descent ----
    py::class_<ntkit::descent::SplitCurve>(m, "SplitCurve")
        .def(py::init<ntkit::BigInt, ntkit::BigInt, ntkit::BigInt>(), py::arg("e1"), py::arg("e2"),
             py::arg("e3"))
        .def_readonly("e1", &ntkit::descent::SplitCurve::e1)
        .def_readonly("e2", &ntkit::descent::SplitCurve::e2)
        .def_readonly("e3", &ntkit::descent::SplitCurve::e3)
        .def("__repr__", [](const ntkit::descent::SplitCurve& c) {
            return "SplitCurve(" + ntkit::to_string(c.e1) + ", " + ntkit::to_string(c.e2) + ", " +
                   ntkit::to_string(c.e3) + ")";
        });

    py::class_<ntkit::descent::SelmerReport>(m, "SelmerReport")
        .def_property_readonly("accepted",
                               [](const ntkit::descent::SelmerReport& r) {
                                   py::list out;
                                   for (const auto& p : r.accepted) {
                                       out.append(py::make_tuple(p.b1, p.b2));
                                   }
                                   return out;
                               })
        .def_readonly("dim", &ntkit::descent::SelmerReport::selmer_dim)
        .def_readonly("rank_bound", &ntkit::descent::SelmerReport::selmer_rank_bound)
        .def_property_readonly("obstructions",
                               [](const ntkit::descent::SelmerReport& r) {
                                   py::list out;
                                   for (const auto& o : r.obstructions) {
                                       out.append(py::make_tuple(
                                           py::make_tuple(o.pair.b1, o.pair.b2),
                                           ntkit::descent::to_string(o.place)));
                                   }
                                   return out;
                               })
        .def_property_readonly("places_checked", [](const ntkit::descent::SelmerReport& r) {
            py::list out;
            for (const auto& p : r.places_checked) out.append(ntkit::descent::to_string(p));
            return out;
        });

    m.def(
        "descent_image",
        [](const ntkit::descent::SplitCurve& c, const ntkit::ec::PointQ& p) {
            auto img = ntkit::descent::descent_image(c, p);
            return py::make_tuple(img.b1, img.b2);
        },
        py::arg("curve"), py::arg("point"));
    m.def(
        "candidate_pairs",
        [](const ntkit::descent::SplitCurve& c) {
            py::list out;
            for (const auto& p : ntkit::descent::candidate_pairs(c)) {
                out.append(py::make_tuple(p.b1, p.b2));
            }
            return out;
        },
        py::arg("curve"));
    m.def(
        "locally_solvable",
        [](const ntkit::descent::SplitCurve& c, const ntkit::BigInt& b1, const ntkit::BigInt& b2) {
            auto r = ntkit::descent::locally_solvable(c, {b1, b2});
            py::object place = py::none();
            if (r.obstruction) place = py::str(ntkit::descent::to_string(*r.obstruction));
            return py::make_tuple(r.solvable, place);
        },
        py::arg("curve"), py::arg("b1"), py::arg("b2"));
    m.def(
        "two_selmer",
        [](const ntkit::descent::SplitCurve& c, unsigned jobs) {
            return ntkit::descent::two_selmer(c, jobs);
        },
        py::arg("curve"), py::arg("jobs") = 1);
    m.def(
        "rank_window",
        [](const ntkit::descent::SplitCurve& c, const ntkit::BigInt& height, py::object point,
           unsigned jobs) {
            const ntkit::ec::PointQ* known = nullptr;
            ntkit::ec::PointQ storage;
            if (!point.is_none()) {
                storage = py::cast<ntkit::ec::PointQ>(point);
                known = &storage;
            }
            auto w = ntkit::descent::rank_window(c, height, known, jobs);
            py::dict out;
            out["lower"] = w.lower;
            out["upper"] = w.upper;
            out["certificate"] =
                w.certificate == ntkit::descent::RankCertificate::rank1   ? "rank-certified-1"
                : w.certificate == ntkit::descent::RankCertificate::rank0 ? "rank-certified-0"
                                                                          : "uncertified";
            out["selmer"] = w.selmer;
            if (w.witness) out["witness"] = *w.witness;
            return out;
        },
        py::arg("curve"), py::arg("height"), py::arg("point") = py::none(), py::arg("jobs") = 1);

    // ---- family ----
    py::class_<ntkit::family::FamilyParams>(m, "FamilyParams")
        .def(py::init<ntkit::BigInt, ntkit::BigInt, ntkit::BigInt>(), py::arg("a1"), py::arg("a2"),
             py::arg("a3"))
        .def_readonly("a1", &ntkit::family::FamilyParams::a1)
        .def_readonly("a2", &ntkit::family::FamilyParams::a2)
        .def_readonly("a3", &ntkit::family::FamilyParams::a3);

    py::class_<ntkit::family::FamilyMember>(m, "FamilyMember")
        .def_readonly("m", &ntkit::family::FamilyMember::m)
        .def_readonly("n", &ntkit::family::FamilyMember::n)
        .def_readonly("F", &ntkit::family::FamilyMember::F)
        .def_readonly("curve", &ntkit::family::FamilyMember::curve)
        .def_readonly("taut_point", &ntkit::family::FamilyMember::taut_point)
        .def_readonly("disc_core", &ntkit::family::FamilyMember::disc_core);

    py::class_<ntkit::family::MemberReport>(m, "MemberReport")
        .def_readonly("member", &ntkit::family::MemberReport::member)
        .def_readonly("taut_torsion", &ntkit::family::MemberReport::taut_torsion)
        .def_readonly("rank_lower", &ntkit::family::MemberReport::rank_lower)
        .def_property_readonly("selmer",
                               [](const ntkit::family::MemberReport& r) {
                                   return r.selmer ? py::cast(*r.selmer)
                                                   : py::object(py::none());
                               })
        .def_readonly("certified", &ntkit::family::MemberReport::certified)
        .def_readonly("inconclusive_reason", &ntkit::family::MemberReport::inconclusive_reason);

    m.def("f_eval", &ntkit::family::f_eval, py::arg("params"), py::arg("t"));
    m.def("make_member", &ntkit::family::make_member, py::arg("params"), py::arg("m"),
          py::arg("n"));
    m.def("four_primes_search", &ntkit::family::four_primes_search, py::arg("params"),
          py::arg("m_max"), py::arg("n_max"));
    m.def(
        "rank_one_pipeline",
        [](const ntkit::family::FamilyParams& params, const ntkit::BigInt& m_max,
           const ntkit::BigInt& n_max, const ntkit::BigInt& height, bool prime_filter,
           unsigned jobs) {
            ntkit::family::PipelineOptions opts;
            opts.m_max = m_max;
            opts.n_max = n_max;
            opts.search_height = height;
            opts.prime_filter = prime_filter;
            opts.jobs = jobs;
            return ntkit::family::rank_one_pipeline(params, opts);
        },
        py::arg("params"), py::arg("m_max"), py::arg("n_max"), py::arg("height") = 0,
        py::arg("prime_filter") = true, py::arg("jobs") = 1);
}
