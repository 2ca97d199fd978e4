// orbifrob: command-line front end.
//
// Exit codes: 0 when every check passes, 1 when a check fails or a request is
// refused (ineligible base, feasibility cap, non-normalizable input), 2 on
// usage, I/O or parse errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "orbifrob/orbifrob.hpp"

namespace fs = std::filesystem;
using namespace orbifrob;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input;
    std::size_t n = 2;
    int parity = 0;
    std::string torsion = "none";
    std::string out;
    std::string format = "text";
    unsigned workers = 1;
    std::optional<std::size_t> cap;
    unsigned long seed = 1;
    bool scramble = false;
    bool super_mode = false;
    bool super_sign = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << content;
}

/// Writes to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out.empty()) std::cout << content;
    else write_file(cfg.out, content);
}

std::string render(const Report& r, const std::string& format) {
    return format == "json" ? to_json(r).dump(2) + "\n" : r.text();
}

std::size_t cap_of(const RunConfig& cfg) { return cfg.cap ? *cfg.cap : feasibility_cap(); }

std::optional<TwoCocycle> torsion_for(const std::string& selector, const GroupPtr& group) {
    if (selector == "none") return std::nullopt;
    if (selector == "schur" || selector == "k3sign") {
        if (!group->is_symmetric()) throw InvalidArgument("--torsion " + selector + " needs a symmetric group");
        const std::size_t n = group->degree();
        if (n < 2) throw InvalidArgument("--torsion " + selector + " needs n >= 2");
        return selector == "schur" ? schur_cocycle_sn(n) : k3_sign_cocycle(n);
    }
    return cocycle_from_json(read_file(selector));
}

int cmd_verify(const RunConfig& cfg) {
    const std::string text = read_file(cfg.input);
    const Json probe = detail::parse_text(text);
    Report report;
    if (probe.is_object() && probe.contains("sectors")) {
        const GFrobeniusAlgebra a = gfrob_from_json(text);
        bool super_mode = cfg.super_mode;
        for (const auto& s : a.sectors)
            for (int p : s.parity) super_mode = super_mode || p == 1;
        report = verify_axioms(a, {super_mode, cfg.workers});
    } else {
        report = verify_frobenius(algebra_from_json(text));
    }
    emit(cfg, render(report, cfg.format));
    return report.passed() ? 0 : 1;
}

int cmd_sympow(const RunConfig& cfg) {
    const FrobeniusAlgebra base = algebra_from_json(read_file(cfg.input));
    const auto total = sympow_total_dim(base.dim(), cfg.n);
    if (total > cap_of(cfg)) {
        throw FeasibilityRefused("total dimension " + std::to_string(total) + " exceeds cap " + std::to_string(cap_of(cfg)));
    }
    SympowOptions opt;
    opt.parity = cfg.parity;
    opt.workers = cfg.workers;
    opt.torsion = torsion_for(cfg.torsion, FiniteGroupTable::symmetric(cfg.n));
    const SymmetricPower s = SymmetricPower::build(base, cfg.n, opt);

    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    const std::string ext = cfg.format == "json" ? ".json" : ".txt";
    const Report trace = trace_report(s);
    const Report ls = ls_compare(s);
    write_file(dir / "sympow.json", to_json(s.algebra()).dump(1) + "\n");
    write_file(dir / ("verification" + ext), render(*s.verification(), cfg.format));
    write_file(dir / "graph_defects.csv", graph_defect_table(cfg.n));
    write_file(dir / ("trace" + ext), render(trace, cfg.format));
    write_file(dir / ("ls_compare" + ext), render(ls, cfg.format));

    const bool ok = s.verification()->passed() && trace.passed() && ls.passed();
    std::cout << s.algebra().name << ": total dimension " << s.algebra().total_dim() << '\n'
              << "  axioms:         " << (s.verification()->passed() ? "PASS" : "FAIL") << '\n'
              << "  trace values:   " << (trace.passed() ? "PASS" : "FAIL") << '\n'
              << "  two-route:      " << (ls.passed() ? "PASS" : "FAIL") << '\n'
              << "  artifacts in " << dir.string() << '\n';
    return ok ? 0 : 1;
}

int cmd_series(const RunConfig& cfg) {
    const FrobeniusAlgebra base = algebra_from_json(read_file(cfg.input));
    const SeriesReport r = second_quantization(base, cfg.n, cfg.parity, cap_of(cfg), false, cfg.workers);
    bool ok = r.match.value_or(true);
    for (const auto& lvl : r.levels) ok = ok && lvl.invariants_ok;
    std::string verdict = r.match ? (*r.match ? "MATCH" : "MISMATCH") : "not applicable (p=1)";
    if (cfg.format == "json") {
        Json j;
        j["dim_base"] = r.dim_base;
        j["parity"] = r.parity;
        j["coefficients"] = r.coefficients;
        j["product_formula"] = r.product_formula;
        j["verdict"] = verdict;
        Json levels = Json::array();
        for (const auto& lvl : r.levels) {
            Json pj = Json::array();
            for (const auto& [deg, mult] : lvl.poincare) pj.push_back(Json::array({deg.str(), mult}));
            levels.push_back(Json{{"n", lvl.n}, {"total_dim", lvl.total_dim}, {"invariants_dim", lvl.invariants_dim}, {"poincare", pj}, {"invariants_ok", lvl.invariants_ok}});
        }
        j["levels"] = levels;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        auto list = [&](const std::vector<unsigned long long>& v) {
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
            os << '\n';
        };
        for (const auto& lvl : r.levels) {
            os << "n=" << lvl.n << "  total " << lvl.total_dim << "  invariants " << lvl.invariants_dim << "  poincare:";
            for (const auto& [deg, mult] : lvl.poincare) os << ' ' << mult << "*q^" << deg.str();
            os << '\n';
        }
        os << "coefficients: ";
        list(r.coefficients);
        os << "product formula: ";
        list(r.product_formula);
        os << "verdict: " << verdict << '\n';
        emit(cfg, os.str());
    }
    return ok ? 0 : 1;
}

int cmd_twist(const RunConfig& cfg) {
    GFrobeniusAlgebra a = gfrob_from_json(read_file(cfg.input));
    if (const auto alpha = torsion_for(cfg.torsion, a.group)) a = twist_by_torsion(a, *alpha);
    if (cfg.super_sign) {
        if (!a.group->is_symmetric()) throw InvalidArgument("--super-sign needs a symmetric group");
        a = super_twist(a, SuperGrading::sign(a.group, 1));
    }
    bool super_mode = false;
    for (const auto& s : a.sectors)
        for (int p : s.parity) super_mode = super_mode || p == 1;
    const Report r = verify_axioms(a, {super_mode, cfg.workers});
    emit(cfg, to_json(a).dump(1) + "\n");
    std::cerr << r.text();
    return r.passed() ? 0 : 1;
}

int cmd_defect_table(const RunConfig& cfg) {
    if (cfg.n > 6) throw FeasibilityRefused("defect tables are limited to n <= 6");
    emit(cfg, graph_defect_table(cfg.n));
    return 0;
}

int cmd_schur(const RunConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 7) throw InvalidArgument("schur-cocycle needs 2 <= n <= 7");
    const TwoCocycle alpha = schur_cocycle_sn(cfg.n);
    const Report r = torsion_class_report(alpha);
    if (cfg.format == "json") {
        Json j = to_json(alpha);
        j["report"] = to_json(r);
        emit(cfg, j.dump(1) + "\n");
    } else {
        emit(cfg, r.text());
    }
    return r.passed() ? 0 : 1;
}

int cmd_normalize(const RunConfig& cfg) {
    GFrobeniusAlgebra a = gfrob_from_json(read_file(cfg.input));
    const auto& G = *a.group;
    if (!G.is_symmetric()) throw InvalidArgument("normalize needs an algebra over a symmetric group");
    std::ostringstream log;
    if (cfg.scramble) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<long> num(1, 9), den(1, 4), sign(0, 1);
        std::vector<Scalar> mu(G.size(), Scalar(1));
        const auto fixed = G.degree() >= 2 ? G.find("(1 2)") : std::nullopt;
        for (std::size_t g = 0; g < G.size(); ++g) {
            if (g == G.identity() || (fixed && g == *fixed)) continue;
            mu[g] = Scalar(sign(rng) ? num(rng) : -num(rng)) / Scalar(den(rng));
        }
        a = rescale_sectors(a, mu);
        log << "scrambled generators with seed " << cfg.seed << '\n';
    }
    const SpecialStructure special = extract_special(a);
    const GammaNormalization gn = normalize_gamma(a, special);
    const NonabelianNormalization phi = normalize_nonabelian_sn(NonabelianCocycle(a.group, gn.special.phi));
    bool phi_unchanged = true;
    for (const auto& l : phi.lambda) phi_unchanged = phi_unchanged && l.is_one();

    Report summary("normalization of " + a.name);
    summary.append(special.report, "special: ");
    summary.append(gn.report, "gamma: ");
    Check phi_check("phi normalized with the gamma gauge: (-1)^{p |s| |t|}");
    phi_check.expect(phi_unchanged, [] { return std::string("phi needs a further rescaling after gamma normalization"); });
    summary.add(phi_check);

    if (cfg.format == "json") {
        Json j;
        Json lam = Json::array();
        for (std::size_t g = 0; g < G.size(); ++g) lam.push_back(Json::array({G.label(g), gn.lambda[g].str()}));
        j["lambda"] = lam;
        j["parity"] = phi.parity;
        j["report"] = to_json(summary);
        j["normalized"] = to_json(gn.normalized);
        emit(cfg, j.dump(1) + "\n");
    } else {
        log << "parity p = " << phi.parity << '\n' << "lambda:";
        for (std::size_t g = 0; g < G.size(); ++g) log << ' ' << G.label(g) << '=' << gn.lambda[g].str();
        log << '\n' << summary.text();
        emit(cfg, log.str());
    }
    return summary.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbifrob: G-twisted Frobenius algebras and symmetric powers"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::string> formats{"text", "json"};

    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--out", cfg.out, "output path (directory for sympow)");
        if (with_format) sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember(formats));
        sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    };

    auto* verify = app.add_subcommand("verify", "verify an algebra or G-twisted algebra file");
    verify->add_option("file", cfg.input)->required();
    verify->add_flag("--super", cfg.super_mode, "use the super axioms");
    add_common(verify);

    auto* sympow = app.add_subcommand("sympow", "build and check the symmetric power of a base algebra");
    sympow->add_option("base", cfg.input)->required();
    sympow->add_option("--n", cfg.n, "tensor power")->required();
    sympow->add_option("--parity", cfg.parity)->check(CLI::Range(0, 1));
    sympow->add_option("--torsion", cfg.torsion, "none, schur, k3sign or a cocycle file");
    sympow->add_option("--cap", cfg.cap, "feasibility cap on total dimension");
    add_common(sympow);

    auto* series = app.add_subcommand("series", "second-quantization dimension series");
    series->add_option("base", cfg.input)->required();
    series->add_option("--n", cfg.n, "highest level")->required();
    series->add_option("--parity", cfg.parity)->check(CLI::Range(0, 1));
    series->add_option("--cap", cfg.cap, "feasibility cap on total dimension");
    add_common(series);

    auto* twist = app.add_subcommand("twist", "twist a G-twisted algebra by discrete torsion");
    twist->add_option("file", cfg.input)->required();
    twist->add_option("--torsion", cfg.torsion, "none, schur, k3sign or a cocycle file");
    twist->add_flag("--super-sign", cfg.super_sign, "also apply the super twist by the sign homomorphism");
    add_common(twist, false);

    auto* defects = app.add_subcommand("defect-table", "graph defects of all pairs in S_n as CSV");
    defects->add_option("--n", cfg.n)->required();
    defects->add_option("--out", cfg.out);

    auto* schur = app.add_subcommand("schur-cocycle", "Schur cocycle of S_n with its class report");
    schur->add_option("--n", cfg.n)->required();
    add_common(schur);

    auto* normalize = app.add_subcommand("normalize", "normalize gamma and phi of an S_n-twisted algebra");
    normalize->add_option("file", cfg.input)->required();
    normalize->add_flag("--scramble", cfg.scramble, "rescale generators randomly before normalizing");
    normalize->add_option("--seed", cfg.seed, "seed for --scramble");
    add_common(normalize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*sympow) return cmd_sympow(cfg);
        if (*series) return cmd_series(cfg);
        if (*twist) return cmd_twist(cfg);
        if (*defects) return cmd_defect_table(cfg);
        if (*schur) return cmd_schur(cfg);
        if (*normalize) return cmd_normalize(cfg);
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
