// ellipscheme: classify, construct, analyze, verify.
//
// Exit codes: 0 success, 1 usage, 2 domain error, 3 internal invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <ellipscheme/classify.hpp>
#include <ellipscheme/diagram.hpp>
#include <ellipscheme/fixtures.hpp>
#include <ellipscheme/patchwork.hpp>
#include <ellipscheme/trigonal.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ellipscheme;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitInternal = 3;

std::string join_types(const std::set<TopType>& types) {
    std::string out;
    for (const auto& t : types) out += (out.empty() ? "" : ", ") + t.to_string();
    return out;
}

json types_json(const std::set<TopType>& types) {
    json out = json::array();
    for (const auto& t : types) out.push_back(to_json(t));
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::OutOfRange, "cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------- classify

int cmd_classify(int k, const std::string& format) {
    const Diagram d = make_diagram(k);
    if (format == "json")
        std::cout << to_json(d).dump(2) << "\n";
    else if (format == "svg")
        std::cout << render_svg(d);
    else
        std::cout << render_ascii(d);
    return kExitOk;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
    int k = 1;
    std::string family = "m";
    int lambda = 0;
    std::string collapse;
    std::string emit;
    std::string out_dir = ".";
    std::string format = "ascii";
};

std::pair<int, int> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--collapse", "expected a,b");
    try {
        std::size_t u1 = 0, u2 = 0;
        const std::string l = text.substr(0, comma), r = text.substr(comma + 1);
        const int a = std::stoi(l, &u1), b = std::stoi(r, &u2);
        if (u1 != l.size() || u2 != r.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--collapse", "expected a,b with integers a and b");
    }
}

int cmd_construct(const ConstructArgs& a) {
    std::optional<std::pair<int, int>> collapse;
    if (!a.collapse.empty()) collapse = parse_pair(a.collapse);
    std::optional<Rational> t;
    if (!a.emit.empty()) {
        try {
            t = parse_rational(a.emit);
        } catch (const Error&) {
            throw CLI::ValidationError("--emit", "expected a rational n or n/d");
        }
    }

    const FixtureSet fx = default_fixtures();
    Construction c = a.family == "m" ? mcurve_family(a.k, a.lambda, fx) : m2curve_family(a.k, a.lambda, fx);
    const auto cls = classify_construction(c);
    json report{{"k", a.k}, {"family", a.family}, {"lambda", a.lambda}, {"scheme", to_json(cls.scheme)},
                {"signed_scheme", cls.signed_scheme()}, {"components", cls.component_count()},
                {"pseudo_lines", cls.pseudo_lines}};
    PatchworkClassification final_cls = cls;
    if (collapse) {
        c = collapse_to(c, collapse->first, collapse->second);
        final_cls = classify_construction(c);
        report["collapsed"] = {{"scheme", to_json(final_cls.scheme)}, {"signed_scheme", final_cls.signed_scheme()}};
    }
    const auto cover = cover_type(final_cls.scheme, a.k);
    report["cover"] = types_json(cover);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const std::string stem = "k" + std::to_string(a.k) + "_" + a.family + "_l" + std::to_string(a.lambda) +
                             (collapse ? "_c" + std::to_string(collapse->first) + "_" + std::to_string(collapse->second) : "");
    const fs::path fixture = dir / ("construction_" + stem + ".txt");
    write_file(fixture, format_construction(c));
    report["fixture_file"] = fixture.string();
    if (t) {
        const ConvexLifting lift = build_lifting(c.tri, c.history);
        const TrigonalCurve curve = depress(emit_T_polynomial({c.tri, c.signs, lift, *t}), a.k);
        const fs::path curve_file = dir / ("curve_" + stem + ".txt");
        write_file(curve_file, format_curve(curve));
        report["curve_file"] = curve_file.string();
        report["t"] = format_rational(*t);
    }

    if (a.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (a.format == "svg") {
        std::cout << render_patchwork_svg(trace_curve(symmetrize(c.tri, c.signs)));
    } else {
        std::cout << "k=" << a.k << " family=" << a.family << " lambda=" << a.lambda << "\n";
        std::cout << "scheme " << cls.signed_scheme() << " (" << cls.component_count() << " components, "
                  << cls.pseudo_lines << " pseudo-line)\n";
        if (collapse) std::cout << "collapsed " << final_cls.signed_scheme() << "\n";
        std::cout << "cover " << join_types(cover) << "\n";
        std::cout << "fixture " << fixture.string() << "\n";
        if (t) std::cout << "curve " << report["curve_file"].get<std::string>() << " at t=" << a.emit << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
    const TrigonalCurve curve = parse_curve(in);
    const GenericityReport gen = check_generic(curve);
    json report{{"k", curve.k},
                {"generic", gen.generic()},
                {"degree_ok", gen.degree_ok},
                {"squarefree_ok", gen.squarefree_ok},
                {"coprime_ok", gen.coprime_ok},
                {"delta_degree", gen.delta.degree()}};
    std::set<TopType> cover;
    std::optional<SchemeAnalysis> an;
    if (gen.generic()) {
        an = analyze_scheme(curve);
        cover = cover_type(an->scheme, curve.k);
        report["scheme"] = to_json(an->scheme);
        report["signed_scheme"] = an->scheme.is_three_pseudo_lines()
                                      ? an->scheme.to_string()
                                      : "<" + std::to_string(an->plus) + "|" + std::to_string(an->minus) + ">";
        report["delta_roots"] = an->delta_roots.size();
        report["cover"] = types_json(cover);
    }
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "k=" << curve.k << "\n";
        std::cout << "deg Delta = " << gen.delta.degree() << (gen.degree_ok ? "" : " (expected " + std::to_string(12 * curve.k) + ")")
                  << "\n";
        std::cout << "squarefree " << (gen.squarefree_ok ? "yes" : "no") << ", p and q coprime "
                  << (gen.coprime_ok ? "yes" : "no") << "\n";
        if (an) {
            std::cout << "scheme " << report["signed_scheme"].get<std::string>() << "\n";
            std::cout << "cover " << join_types(cover) << "\n";
        } else {
            std::cout << "NonGeneric\n";
        }
    }
    return an ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------- verify

struct VerifyRow {
    int k;
    TheoremCheck theorem;
    bool diagram_ok;
    bool families_ok;
    std::string note;
};

VerifyRow verify_one(int k, const FixtureSet& fx) {
    VerifyRow row{k, verify_theorem(k), true, true, {}};
    const auto pts = allowed_points(k);
    int m_points = 0;
    for (const auto& p : pts) {
        if (!pts.contains({-p.chi, p.h_star})) row.diagram_ok = false;
        if (p.h_star == 12 * k) ++m_points;
    }
    if (m_points != k + 1 || !pts.contains({0, 8}) || point_to_types({0, 8}, k).size() != 2) row.diagram_ok = false;

    const auto closure = morse_closure(k);
    auto check = [&](const Construction& c, int a, int b) {
        const auto cls = classify_construction(c);
        if (cls.scheme != RealScheme::ovals(a, b)) {
            row.families_ok = false;
            row.note += " got " + cls.scheme.to_string() + " want " + RealScheme::ovals(a, b).to_string();
            return;
        }
        for (const auto& t : cover_type(cls.scheme, k)) {
            const auto bt = t.betti();
            if (!closure.contains(t) || !pts.contains({bt.chi, bt.h_star})) row.families_ok = false;
        }
    };
    for (int l = 0; l <= k; ++l) check(mcurve_family(k, l, fx), k - 1 + 4 * l, 5 * k - 1 - 4 * l);
    for (int l = 0; l <= k - 1; ++l) check(m2curve_family(k, l, fx), k + 4 * l, 5 * k - 4 - 4 * l);
    return row;
}

int cmd_verify(int k_max) {
    const FixtureSet fx = default_fixtures();
    std::vector<std::future<VerifyRow>> jobs;
    for (int k = 1; k <= k_max; ++k) jobs.push_back(std::async(std::launch::async, verify_one, k, std::cref(fx)));
    bool all = true;
    std::cout << "k  closure  diagram  theorem  points  families  result\n";
    for (auto& j : jobs) {
        const VerifyRow r = j.get();
        const bool ok = r.theorem.ok && r.diagram_ok && r.families_ok;
        all = all && ok;
        std::cout << r.k << "  " << r.theorem.closure_size << "  " << r.theorem.diagram_size << "  "
                  << (r.theorem.ok ? "ok" : "FAIL") << "  " << (r.diagram_ok ? "ok" : "FAIL") << "  "
                  << (r.families_ok ? "ok" : "FAIL") << "  " << (ok ? "PASS" : "FAIL") << r.note << "\n";
    }
    return all ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real jacobian elliptic surfaces: admissible types, patchwork witnesses, curve analysis"};
    app.require_subcommand(1, 1);
    const std::vector<std::string> formats{"json", "ascii", "svg"};

    int classify_k = 1;
    std::string classify_format = "ascii";
    auto* classify = app.add_subcommand("classify", "print the admissible (chi, h*) diagram and its types");
    classify->add_option("--k", classify_k, "holomorphic Euler characteristic")->required()->check(CLI::Range(1, 1000));
    classify->add_option("--format", classify_format)->check(CLI::IsMember(formats));

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "build a patchwork witness curve");
    construct->add_option("--k", cargs.k)->required()->check(CLI::Range(1, 1000));
    construct->add_option("--family", cargs.family)->required()->check(CLI::IsMember({"m", "m2"}));
    construct->add_option("--lambda", cargs.lambda)->required()->check(CLI::NonNegativeNumber);
    construct->add_option("--collapse", cargs.collapse, "remaining oval counts a,b around + and - vertices");
    construct->add_option("--emit", cargs.emit, "write the depressed T-polynomial curve at this t");
    construct->add_option("--out", cargs.out_dir, "output directory");
    construct->add_option("--format", cargs.format)->check(CLI::IsMember(formats));

    std::string analyze_file, analyze_format = "ascii";
    auto* analyze = app.add_subcommand("analyze", "genericity, real scheme and cover types of a curve file");
    analyze->add_option("file", analyze_file)->required();
    analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"json", "ascii"}));

    int k_max = 1;
    auto* verify = app.add_subcommand("verify", "cross-check closure, diagram and constructions for k = 1..k-max");
    verify->add_option("--k-max", k_max)->required()->check(CLI::Range(1, 1000));

    try {
        app.parse(argc, argv);
        if (*classify) return cmd_classify(classify_k, classify_format);
        if (*construct) return cmd_construct(cargs);
        if (*analyze) return cmd_analyze(analyze_file, analyze_format);
        if (*verify) return cmd_verify(k_max);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_internal(e.code()) ? kExitInternal : kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
