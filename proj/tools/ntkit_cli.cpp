// ntkit: batch-oriented number theory runs with machine-readable output.
//
// Every run prints a one-line JSON manifest first (command, arguments,
// version, timestamp, seed), then the payload: a single JSON document on one
// line, JSON-lines for pipeline sweeps, or CSV rows for tables. Re-running
// with a pinned --timestamp reproduces the output byte for byte; --jobs only
// changes wall time, never bytes.
//
// Exit codes: 0 success (for family --certify: at least one certified
// member), 1 usage or parse error, 2 inconclusive (no witness within bound,
// factorization budget exhausted, or nothing certified), 3 internal
// consistency failure.

#include "ntkit/descent.hpp"
#include "ntkit/diophantine.hpp"
#include "ntkit/family.hpp"
#include "ntkit/json_io.hpp"
#include "ntkit/pell.hpp"
#include "ntkit/primality.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>

namespace {

using ntkit::BigInt;
using json = ntkit::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInternal = 3;

struct GlobalOptions {
    unsigned jobs = 1;
    std::string timestamp;  // empty: stamp with the current UTC time
    uint64_t seed = 0;
    unsigned long rho_budget = 0;  // 0: library default / environment
};

std::string now_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void print_manifest(const GlobalOptions& global, const std::string& command, json args) {
    json manifest{{"schema", "ntkit.manifest/1"},
                  {"tool", "ntkit"},
                  {"version", NTKIT_VERSION},
                  {"command", command},
                  {"args", std::move(args)},
                  {"timestamp", global.timestamp.empty() ? now_utc() : global.timestamp},
                  {"seed", global.seed}};
    std::cout << manifest.dump() << "\n";
}

ntkit::FactorBudget budget_of(const GlobalOptions& global) {
    ntkit::FactorBudget b = ntkit::default_budget();
    if (global.rho_budget > 0) b.rho_iterations = global.rho_budget;
    return b;
}

std::vector<BigInt> parse_int_list(const std::string& text, size_t expect = 0) {
    std::vector<BigInt> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        size_t end = comma == std::string::npos ? text.size() : comma;
        out.push_back(ntkit::parse_int(text.substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (expect != 0 && out.size() != expect) {
        throw std::invalid_argument("expected " + std::to_string(expect) +
                                    " comma-separated integers, got \"" + text + "\"");
    }
    return out;
}

// ---- pell ------------------------------------------------------------------

struct PellArgs {
    std::string a;
    long count = -1;
    bool divisibility = false;
    unsigned long m = 0, n = 0;
    std::string bound;  // enumeration
    std::string format = "json";
};

int run_pell(const GlobalOptions& global, const PellArgs& args) {
    BigInt a = ntkit::parse_int(args.a);
    bool enumerate = !args.bound.empty();
    int modes = (args.count >= 0) + args.divisibility + enumerate;
    if (modes != 1) {
        throw std::invalid_argument("pell needs exactly one of --count, --divisibility, --bound");
    }

    if (args.count >= 0) {
        print_manifest(global, "pell",
                       {{"a", args.a}, {"count", args.count}, {"format", args.format}});
        auto seq = ntkit::pell::pell_sequence(a, static_cast<unsigned long>(args.count));
        if (args.format == "csv") {
            std::cout << "n,x,y\n";
            for (const auto& s : seq) {
                std::cout << s.index << "," << ntkit::to_string(s.x) << ","
                          << ntkit::to_string(s.y) << "\n";
            }
        } else {
            json solutions = json::array();
            for (const auto& s : seq) solutions.push_back(ntkit::io::to_json(s));
            json doc{{"schema", "ntkit.pell.sequence/1"},
                     {"a", args.a},
                     {"solutions", std::move(solutions)}};
            std::cout << doc.dump() << "\n";
        }
        return kExitOk;
    }

    if (args.divisibility) {
        if (args.m == 0 || args.n == 0) {
            throw std::invalid_argument("--divisibility needs --m and --n (both >= 1)");
        }
        print_manifest(global, "pell",
                       {{"a", args.a}, {"divisibility", true}, {"m", args.m}, {"n", args.n}});
        auto report = ntkit::pell::divisibility_report(a, args.m, args.n);
        std::cout << ntkit::io::to_json(report).dump() << "\n";
        return kExitOk;
    }

    BigInt bound = ntkit::parse_int(args.bound);
    print_manifest(global, "pell", {{"a", args.a}, {"bound", args.bound}, {"format", args.format}});
    auto sols = ntkit::pell::enumerate_solutions_below(a, bound);
    if (args.format == "csv") {
        std::cout << "x,y\n";
        for (const auto& [x, y] : sols) {
            std::cout << ntkit::to_string(x) << "," << ntkit::to_string(y) << "\n";
        }
    } else {
        json list = json::array();
        for (const auto& [x, y] : sols) {
            list.push_back({{"x", ntkit::to_string(x)}, {"y", ntkit::to_string(y)}});
        }
        json doc{{"schema", "ntkit.pell.enumerate/1"},
                 {"a", args.a},
                 {"bound", args.bound},
                 {"solutions", std::move(list)}};
        std::cout << doc.dump() << "\n";
    }
    return kExitOk;
}

// ---- dioph -----------------------------------------------------------------

struct DiophArgs {
    std::string poly;
    std::string params;
    std::string bound = "0";
};

int run_dioph(const GlobalOptions& global, const DiophArgs& args) {
    auto parsed = ntkit::dioph::parse_polynomial(args.poly);
    ntkit::dioph::DiophantineSet set(parsed.poly, parsed.n_params, parsed.m_witnesses);
    auto params = parse_int_list(args.params, parsed.n_params);
    BigInt bound = ntkit::parse_int(args.bound);

    print_manifest(global, "dioph",
                   {{"poly", ntkit::dioph::to_string(set.poly, set.n_params)},
                    {"params", args.params},
                    {"bound", args.bound}});
    auto result = ntkit::dioph::member_search(set, params, bound);
    std::cout << ntkit::io::to_json(result).dump() << "\n";
    return result.status == ntkit::dioph::Membership::member_with_witness ? kExitOk
                                                                          : kExitInconclusive;
}

// ---- curve -----------------------------------------------------------------

struct CurveArgs {
    std::string a, b;
    std::vector<std::string> add;
    std::string mul;
    std::string point;
    bool negate = false;
    bool torsion = false;
    bool check = false;
    bool scale = false;
    std::string height;
};

int run_curve(const GlobalOptions& global, const CurveArgs& args) {
    ntkit::ec::CurveQ curve(ntkit::parse_rat(args.a), ntkit::parse_rat(args.b));
    json base{{"a", args.a}, {"b", args.b}};

    int modes = !args.add.empty() + !args.mul.empty() + args.negate + args.torsion + args.check +
                args.scale + !args.height.empty();
    if (modes != 1) {
        throw std::invalid_argument(
            "curve needs exactly one of --add, --mul, --neg, --torsion, --check, --scale, "
            "--height");
    }

    if (!args.add.empty()) {
        base["add"] = json::array({args.add[0], args.add[1]});
        print_manifest(global, "curve", base);
        auto p = ntkit::ec::parse_point(args.add[0]);
        auto q = ntkit::ec::parse_point(args.add[1]);
        auto r = ntkit::ec::add(curve, p, q);
        json doc{{"schema", "ntkit.curve.add/1"}, {"result", ntkit::ec::to_string(r)}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (!args.mul.empty()) {
        base["mul"] = args.mul;
        base["point"] = args.point;
        print_manifest(global, "curve", base);
        auto p = ntkit::ec::parse_point(args.point);
        auto r = ntkit::ec::mul(curve, ntkit::parse_int(args.mul), p);
        json doc{{"schema", "ntkit.curve.mul/1"}, {"result", ntkit::ec::to_string(r)}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (args.negate) {
        base["neg"] = args.point;
        print_manifest(global, "curve", base);
        auto r = ntkit::ec::neg(curve, ntkit::ec::parse_point(args.point));
        json doc{{"schema", "ntkit.curve.neg/1"}, {"result", ntkit::ec::to_string(r)}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (args.torsion) {
        base["torsion"] = args.point;
        print_manifest(global, "curve", base);
        auto t = ntkit::ec::is_torsion(curve, ntkit::ec::parse_point(args.point));
        json doc{{"schema", "ntkit.curve.torsion/1"}, {"torsion", t.torsion}};
        if (t.torsion) doc["order"] = t.order;
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (args.check) {
        base["check"] = args.point;
        print_manifest(global, "curve", base);
        bool on = ntkit::ec::on_curve(curve, ntkit::ec::parse_point(args.point));
        json doc{{"schema", "ntkit.curve.check/1"}, {"on_curve", on}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (args.scale) {
        print_manifest(global, "curve", base);
        auto scaled = ntkit::ec::scale_model(curve);
        json doc{{"schema", "ntkit.curve.scale/1"},
                 {"u", ntkit::to_string(scaled.u)},
                 {"a", ntkit::to_string(scaled.curve.a)},
                 {"b", ntkit::to_string(scaled.curve.b)}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    base["height"] = args.height;
    print_manifest(global, "curve", base);
    auto pts = ntkit::ec::naive_point_search(curve, ntkit::parse_int(args.height));
    json list = json::array();
    for (const auto& p : pts) list.push_back(ntkit::ec::to_string(p));
    json doc{{"schema", "ntkit.curve.search/1"}, {"points", std::move(list)}};
    std::cout << doc.dump() << "\n";
    return kExitOk;
}

// ---- descent ---------------------------------------------------------------

struct DescentArgs {
    std::string roots;
    std::string image;
    std::string pair;
    bool window = false;
    std::string height = "50";
    std::string point;
};

int run_descent(const GlobalOptions& global, const DescentArgs& args) {
    auto roots = parse_int_list(args.roots, 3);
    ntkit::descent::SplitCurve curve(roots[0], roots[1], roots[2]);
    auto budget = budget_of(global);
    json base{{"roots", args.roots}};

    if (!args.image.empty()) {
        base["image"] = args.image;
        print_manifest(global, "descent", base);
        auto pair =
            ntkit::descent::descent_image(curve, ntkit::ec::parse_point(args.image), budget);
        json doc{{"schema", "ntkit.descent.image/1"},
                 {"pair", json::array({ntkit::to_string(pair.b1), ntkit::to_string(pair.b2)})}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (!args.pair.empty()) {
        auto values = parse_int_list(args.pair, 2);
        base["pair"] = args.pair;
        print_manifest(global, "descent", base);
        auto check = ntkit::descent::locally_solvable(curve, {values[0], values[1]}, budget);
        json doc{{"schema", "ntkit.descent.local/1"}, {"solvable", check.solvable}};
        if (check.obstruction) doc["obstruction"] = ntkit::descent::to_string(*check.obstruction);
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }
    if (args.window) {
        base["window"] = true;
        base["height"] = args.height;
        if (!args.point.empty()) base["point"] = args.point;
        print_manifest(global, "descent", base);
        std::optional<ntkit::ec::PointQ> known;
        if (!args.point.empty()) known = ntkit::ec::parse_point(args.point);
        auto window = ntkit::descent::rank_window(curve, ntkit::parse_int(args.height),
                                                  known ? &*known : nullptr, global.jobs, budget);
        std::cout << ntkit::io::to_json(window).dump() << "\n";
        return kExitOk;
    }
    print_manifest(global, "descent", base);
    auto report = ntkit::descent::two_selmer(curve, global.jobs, budget);
    std::cout << ntkit::io::to_json(report).dump() << "\n";
    return kExitOk;
}

// ---- family ----------------------------------------------------------------

struct FamilyArgs {
    std::string a;
    std::string m_max = "0", n_max = "0";
    std::string height = "0";
    bool list_primes = false;
    bool all_coprime = false;
    bool certify = false;
};

int run_family(const GlobalOptions& global, const FamilyArgs& args) {
    auto a = parse_int_list(args.a, 3);
    ntkit::family::FamilyParams params(a[0], a[1], a[2]);
    json base{{"a", args.a}, {"m_max", args.m_max}, {"n_max", args.n_max}};

    if (args.list_primes) {
        base["list_primes"] = true;
        print_manifest(global, "family", base);
        auto hits = ntkit::family::four_primes_search(params, ntkit::parse_int(args.m_max),
                                                      ntkit::parse_int(args.n_max));
        json list = json::array();
        for (const auto& [m, n] : hits) {
            list.push_back(json::array({ntkit::to_string(m), ntkit::to_string(n)}));
        }
        json doc{{"schema", "ntkit.family.four_primes/1"}, {"pairs", std::move(list)}};
        std::cout << doc.dump() << "\n";
        return kExitOk;
    }

    base["height"] = args.height;
    base["all_coprime"] = args.all_coprime;
    base["certify"] = args.certify;
    print_manifest(global, "family", base);

    ntkit::family::PipelineOptions options;
    options.m_max = ntkit::parse_int(args.m_max);
    options.n_max = ntkit::parse_int(args.n_max);
    options.search_height = ntkit::parse_int(args.height);
    options.prime_filter = !args.all_coprime;
    options.jobs = global.jobs;
    options.budget = budget_of(global);

    auto reports = ntkit::family::rank_one_pipeline(params, options);
    bool any_certified = false;
    bool any_conclusive = false;
    for (const auto& r : reports) {
        std::cout << ntkit::io::to_json(r).dump() << "\n";
        any_certified = any_certified || r.certified;
        any_conclusive = any_conclusive || r.inconclusive_reason.empty();
    }
    if (args.certify) return any_certified ? kExitOk : kExitInconclusive;
    if (!reports.empty() && !any_conclusive) return kExitInconclusive;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ntkit: exact-arithmetic number theory toolkit"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--jobs", global.jobs, "Worker threads (never changes output bytes)")
        ->capture_default_str();
    app.add_option("--timestamp", global.timestamp,
                   "Pin the manifest timestamp (default: current UTC time)");
    app.add_option("--seed", global.seed, "Seed for randomized internals")->capture_default_str();
    app.add_option("--rho-budget", global.rho_budget,
                   "Pollard rho iteration budget (default: library/NTKIT_FACTOR_BUDGET)");

    PellArgs pell;
    auto* pell_cmd = app.add_subcommand("pell", "Pell solution sequences x^2 - (a^2-1)y^2 = 1");
    pell_cmd->fallthrough();
    pell_cmd->add_option("--a", pell.a, "Parameter a >= 2")->required();
    pell_cmd->add_option("--count", pell.count, "List (x_n, y_n) for n = 0..count");
    pell_cmd->add_flag("--divisibility", pell.divisibility, "Divisibility report for (m, n)");
    pell_cmd->add_option("--m", pell.m, "Divisibility index m >= 1");
    pell_cmd->add_option("--n", pell.n, "Divisibility index n >= 1");
    pell_cmd->add_option("--bound", pell.bound, "Enumerate all solutions with y <= bound");
    pell_cmd->add_option("--format", pell.format, "json or csv")->capture_default_str();

    DiophArgs dioph;
    auto* dioph_cmd = app.add_subcommand("dioph", "Diophantine membership by witness search");
    dioph_cmd->fallthrough();
    dioph_cmd->add_option("--poly", dioph.poly, "Polynomial in x1..xN, y1..yM")->required();
    dioph_cmd->add_option("--params", dioph.params, "Comma-separated parameter values")->required();
    dioph_cmd->add_option("--bound", dioph.bound, "Witness box bound (exhaustive scan)")
        ->required();

    CurveArgs curve;
    auto* curve_cmd = app.add_subcommand("curve", "Elliptic curve arithmetic over Q");
    curve_cmd->fallthrough();
    curve_cmd->add_option("--a", curve.a, "Coefficient a (rational p/q)")->required();
    curve_cmd->add_option("--b", curve.b, "Coefficient b (rational p/q)")->required();
    curve_cmd->add_option("--add", curve.add, "Add two points \"(x, y)\" or \"O\"")->expected(2);
    curve_cmd->add_option("--mul", curve.mul, "Scalar k for --point");
    curve_cmd->add_option("--point", curve.point,
                          "Point argument for --mul/--neg/--torsion/--check");
    curve_cmd->add_flag("--neg", curve.negate, "Negate --point");
    curve_cmd->add_flag("--torsion", curve.torsion, "Torsion test for --point (integral model)");
    curve_cmd->add_flag("--check", curve.check, "Test whether --point lies on the curve");
    curve_cmd->add_flag("--scale", curve.scale, "Minimal integral model");
    curve_cmd->add_option("--height", curve.height, "Point search height bound");

    DescentArgs descent;
    auto* descent_cmd = app.add_subcommand("descent", "Complete 2-descent on split cubic curves");
    descent_cmd->fallthrough();
    descent_cmd->add_option("--roots", descent.roots, "Roots e1,e2,e3 (integers)")->required();
    descent_cmd->add_option("--image", descent.image, "Descent image of a point \"(x, y)\"");
    descent_cmd->add_option("--pair", descent.pair, "Local solvability of one class pair b1,b2");
    descent_cmd->add_flag("--window", descent.window, "Rank window (search + Selmer bound)");
    descent_cmd->add_option("--height", descent.height, "Search height for --window")
        ->capture_default_str();
    descent_cmd->add_option("--point", descent.point, "Known point on the split model");

    FamilyArgs family;
    auto* family_cmd = app.add_subcommand("family", "Two-parameter family and rank-1 pipeline");
    family_cmd->fallthrough();
    family_cmd->add_option("--a", family.a, "Base roots a1,a2,a3")->required();
    family_cmd->add_option("--m-max", family.m_max, "Box bound for m (1..m_max)")->required();
    family_cmd->add_option("--n-max", family.n_max, "Box bound for n (1..n_max)")->required();
    family_cmd->add_option("--height", family.height,
                           "Fallback point-search height when the built-in point is torsion")
        ->capture_default_str();
    family_cmd->add_flag("--list-primes", family.list_primes,
                         "Only list (m, n) with all four linear forms prime");
    family_cmd->add_flag("--all-coprime", family.all_coprime,
                         "Disable the prime filter: all coprime non-degenerate (m, n)");
    family_cmd->add_flag("--certify", family.certify,
                         "Exit 0 only if a rank-certified-1 member exists");

    CLI11_PARSE(app, argc, argv);

    ntkit::set_random_seed(global.seed);

    try {
        if (*pell_cmd) return run_pell(global, pell);
        if (*dioph_cmd) return run_dioph(global, dioph);
        if (*curve_cmd) return run_curve(global, curve);
        if (*descent_cmd) return run_descent(global, descent);
        if (*family_cmd) return run_family(global, family);
    } catch (const ntkit::dioph::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ntkit::IncompleteFactorizationError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const ntkit::descent::ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
