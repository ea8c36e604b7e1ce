// padic: command-line front end for cohomology, Massey products and the invariant suites.

#include "padic/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace padic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitVerifyBase = 10;

struct Options {
    SessionConfig cfg;
    std::string model = "singular";
    std::string space;
    std::string fixture;
    std::string out;
    std::string format = "json";
    unsigned seed = 0;
    bool seeded = false;

    // massey
    std::string sel_a, sel_b, sel_c;
    std::vector<int> scale;
    bool obstruction = false;

    // verify
    std::string suite = "all";

    // space
    std::string file;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << text;
}

std::string render(const Options& o, const Json& report, const std::string& text) {
    return o.format == "json" ? report.dump(2) + "\n" : text;
}

std::string group_text(const AbelianGroupReport& h, long p) {
    std::ostringstream os;
    bool first = true;
    if (h.free_rank > 0) {
        os << "Z_(" << p << ")";
        if (h.free_rank > 1) os << "^" << h.free_rank;
        first = false;
    }
    for (const auto& t : h.torsion) {
        os << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    return first ? "0" : os.str();
}

SimplicialSet require_space(const Options& o) {
    if (o.space.empty()) throw ConfigError("--space is required");
    return space_from_spec(o.space);
}

// ---- cohomology ----------------------------------------------------------------

int cmd_cohomology(const Options& o) {
    SimplicialSet X = require_space(o);
    const int q_max = std::min(o.cfg.max_degree, X.dim());
    const long p = o.cfg.prime;
    CohomologyReport R;
    bool omega_like = false;
    if (o.model == "singular") {
        R = cohomology_ring(X, RingTag::integer(p), q_max);
    } else if (o.model == "omega") {
        R = omega_cohomology(X, o.cfg.weight, q_max, p);
        omega_like = true;
    } else if (o.model == "decalage") {
        R = shifted_cohomology(build_D(X, p), q_max);
    } else if (o.model == "v_tensor_omega") {
        R = v_tensor_omega_cohomology(X, o.cfg.weight, q_max, p);
        omega_like = true;
    } else {
        throw ConfigError("unknown model '" + o.model + "' (singular, omega, decalage, v_tensor_omega)");
    }
    bool stable = true;
    for (bool s : R.stable) stable = stable && s;

    Json rep = report_envelope("cohomology", o.cfg);
    rep["model"] = o.model;
    rep["space"] = space_summary(X);
    rep["cohomology"] = to_json(R);
    rep["stable"] = stable;

    std::ostringstream os;
    os << o.model << " cohomology of " << X.label() << " at p=" << p;
    if (omega_like) os << ", W=" << o.cfg.weight;
    os << "\n";
    for (std::size_t q = 0; q < R.degrees.size(); ++q) {
        os << "  H^" << q << " = " << group_text(R.degrees[q], p);
        if (q < R.labels.size() && !R.labels[q].empty()) {
            os << "  [";
            for (std::size_t i = 0; i < R.labels[q].size(); ++i)
                os << (i ? ", " : "") << (R.labels[q][i].empty() ? "-" : R.labels[q][i]);
            os << "]";
        }
        if (q < R.stable.size() && !R.stable[q]) os << "  (unstable)";
        os << "\n";
    }
    for (const auto& n : R.notes) os << "  note: " << n << "\n";
    emit(o, render(o, rep, os.str()));
    return omega_like && !stable ? kExitUnstable : kExitOk;
}

// ---- massey ----------------------------------------------------------------------

struct Selected {
    int degree;
    IntVec cocycle;
    std::string text;
};

Selected select_class(const DGAlgebra& A, const std::map<std::string, std::pair<int, IntVec>>& named, const std::string& s) {
    if (s.empty()) throw ConfigError("class selectors --a and --b are required");
    if (auto it = named.find(s); it != named.end()) return {it->second.first, it->second.second, s};
    auto bad = [&] { return ConfigError("bad class selector '" + s + "' (use DEG:GEN, 0@DEG or a fixture class name)"); };
    try {
        if (auto at = s.find('@'); at != std::string::npos) {
            if (s.substr(0, at) != "0") throw bad();
            int q = std::stoi(s.substr(at + 1));
            if (q < 0 || q > A.top()) throw ConfigError("degree out of range in '" + s + "'");
            return {q, A.zero(q), s};
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw bad();
        int q = std::stoi(s.substr(0, colon));
        std::size_t g = std::stoul(s.substr(colon + 1));
        if (q < 0 || q > A.top()) throw ConfigError("degree out of range in '" + s + "'");
        const auto& gens = A.cohomology(q).generators;
        if (g >= gens.size())
            throw ConfigError("H^" + std::to_string(q) + " has " + std::to_string(gens.size()) + " generators");
        return {q, gens[g], s};
    } catch (const std::logic_error&) {
        throw bad();
    }
}

int cmd_massey(const Options& o) {
    if (o.space.empty() == o.fixture.empty()) throw ConfigError("give exactly one of --space and --fixture");
    DGAlgebra A;
    std::map<std::string, std::pair<int, IntVec>> named;
    Json source;
    if (!o.fixture.empty()) {
        Fixture F = load_fixture_file(o.fixture);
        A = std::move(F.algebra);
        named = std::move(F.classes);
        source = Json{{"fixture", A.label}};
    } else {
        SimplicialSet X = require_space(o);
        const int exponent = o.obstruction ? 1 : o.cfg.precision;
        if (o.model == "singular") {
            A = cochain_algebra(X, RingTag::modular(o.cfg.prime, exponent));
        } else if (o.model == "decalage") {
            A = shifted_algebra(X, build_D(X, o.cfg.prime), exponent);
        } else {
            throw ConfigError("Massey products use --model singular or decalage");
        }
        source = Json{{"space", space_summary(X)}, {"model", o.model}};
    }
    Selected a = select_class(A, named, o.sel_a);
    Selected b = select_class(A, named, o.sel_b);
    Selected c = o.obstruction ? a : select_class(A, named, o.sel_c.empty() ? o.sel_a : o.sel_c);

    Json rep = report_envelope("massey", o.cfg);
    rep["source"] = source;
    rep["ring"] = to_json(A.ring);
    rep["classes"] = Json{{"a", Json{{"selector", a.text}, {"degree", a.degree}, {"cocycle", to_json(a.cocycle)}}},
                          {"b", Json{{"selector", b.text}, {"degree", b.degree}, {"cocycle", to_json(b.cocycle)}}},
                          {"c", Json{{"selector", c.text}, {"degree", c.degree}, {"cocycle", to_json(c.cocycle)}}}};
    std::ostringstream os;
    MasseyOptions mo;
    if (o.seeded) mo.perturb_seed = o.seed;
    MasseyResult R = triple_massey(A, a.degree, a.cocycle, b.degree, b.cocycle, c.degree, c.cocycle, mo);
    rep["massey"] = to_json(R);
    os << "<" << a.text << ", " << b.text << ", " << c.text << "> in H^" << R.degree << " over " << A.ring.name()
       << ": " << (R.vanishes ? "contains 0" : "does not contain 0") << "\n";
    if (o.obstruction) {
        RectificationVerdict V = rectification_obstruction(A, a.degree, a.cocycle, b.degree, b.cocycle);
        rep["obstruction"] = to_json(V);
        os << "m(a, b, a): " << V.verdict() << "\n";
    }
    if (!o.scale.empty()) {
        if (o.scale.size() != 3) throw ConfigError("--scale takes three exponents r s t");
        bool ok = massey_scaling_check(A, a.degree, a.cocycle, b.degree, b.cocycle, c.degree, c.cocycle, o.scale[0],
                                       o.scale[1], o.scale[2]);
        rep["scaling"] = Json{{"r", o.scale[0]}, {"s", o.scale[1]}, {"t", o.scale[2]}, {"holds", ok}};
        os << "scaling (" << o.scale[0] << ", " << o.scale[1] << ", " << o.scale[2] << "): " << (ok ? "holds" : "fails")
           << "\n";
    }
    emit(o, render(o, rep, os.str()));
    return kExitOk;
}

// ---- verify ------------------------------------------------------------------------

int cmd_verify(const Options& o) {
    const auto& names = suite_names();
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (o.suite == "all" || o.suite == names[i]) which.push_back(i);
    if (which.empty()) throw ConfigError("unknown suite '" + o.suite + "'");

    Json rep = report_envelope("verify", o.cfg);
    Json suites = Json::array();
    std::ostringstream os;
    int code = kExitOk;
    for (std::size_t i : which) {
        SuiteResult r = run_suite(names[i], o.cfg);
        suites.push_back(r.to_json());
        os << names[i] << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.checks << " checks)\n";
        for (const auto& f : r.failures) os << "  failed: " << f << "\n";
        if (!r.passed && code == kExitOk) code = kExitVerifyBase + static_cast<int>(i);
    }
    rep["suites"] = suites;
    rep["passed"] = code == kExitOk;
    emit(o, render(o, rep, os.str()));
    return code;
}

// ---- space --------------------------------------------------------------------------

int cmd_space_dump(const Options& o) {
    emit(o, dump_space(require_space(o)));
    return kExitOk;
}

int cmd_space_load(const Options& o) {
    SimplicialSet X = load_space_file(o.file);
    Json rep = report_envelope("space load", o.cfg);
    rep["space"] = space_summary(X);
    std::ostringstream os;
    os << X.label() << ": dimension " << X.dim() << ", simplices";
    for (auto c : X.counts()) os << " " << c;
    os << "\n";
    emit(o, render(o, rep, os.str()));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic cochain algebras: cohomology, Massey products and invariant checks"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--prime", o.cfg.prime, "prime p")->capture_default_str();
        c->add_option("--precision", o.cfg.precision, "residue exponent N (coefficients Z/p^N)")->capture_default_str();
        c->add_option("--weight", o.cfg.weight, "divided-power truncation weight W")->capture_default_str();
        c->add_option("--max-degree", o.cfg.max_degree, "highest cohomological degree")->capture_default_str();
        c->add_option("--out", o.out, "write the report to a file");
        c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
        c->add_option("--seed", o.seed, "seed for randomized choices");
    };

    auto* coh = app.add_subcommand("cohomology", "cohomology of a space in a chosen model");
    common(coh);
    coh->add_option("--space", o.space, "library name (sphere:N, rp2, torus, ...) or .sset file");
    coh->add_option("--model", o.model, "singular, omega, decalage or v_tensor_omega")->capture_default_str();

    auto* mas = app.add_subcommand("massey", "triple Massey product <a, b, c>");
    common(mas);
    mas->add_option("--space", o.space, "library name or .sset file");
    mas->add_option("--fixture", o.fixture, "dg-algebra fixture (JSON)");
    mas->add_option("--model", o.model, "singular or decalage")->capture_default_str();
    mas->add_option("--a", o.sel_a, "class selector DEG:GEN, 0@DEG or fixture name");
    mas->add_option("--b", o.sel_b, "class selector");
    mas->add_option("--c", o.sel_c, "class selector (default: a)");
    mas->add_option("--scale", o.scale, "check m(p^r a, p^s b, p^t c) ⊇ p^(r+s+t) m(a, b, c)")->expected(3);
    mas->add_flag("--obstruction", o.obstruction, "m(a, b, a) over F_2 and the (a ∪_1 a)·b route");

    auto* ver = app.add_subcommand("verify", "run an invariant suite");
    common(ver);
    std::vector<std::string> choices(suite_names().begin(), suite_names().end());
    choices.push_back("all");
    ver->add_option("suite", o.suite, "suite name")->check(CLI::IsMember(choices))->capture_default_str();

    auto* sp = app.add_subcommand("space", "space files");
    sp->require_subcommand(1);
    auto* dump = sp->add_subcommand("dump", "write a space in the text format");
    common(dump);
    dump->add_option("--space", o.space, "library name or .sset file")->required();
    auto* load = sp->add_subcommand("load", "parse a space file and summarize it");
    common(load);
    load->add_option("file", o.file, "space file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (auto* c : {coh, mas, ver}) {
            if (c->parsed()) {
                auto* seed = c->get_option("--seed");
                o.seeded = seed->count() > 0;
            }
        }
        o.cfg.validate();
        if (coh->parsed()) return cmd_cohomology(o);
        if (mas->parsed()) return cmd_massey(o);
        if (ver->parsed()) return cmd_verify(o);
        if (dump->parsed()) return cmd_space_dump(o);
        if (load->parsed()) return cmd_space_load(o);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UndefinedMassey& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
