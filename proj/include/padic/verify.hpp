#pragma once

// Named invariant suites shared by `padic verify` and the acceptance runner.

#include "padic/report_json.hpp"

#include <array>

namespace padic {

struct SuiteResult {
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    Json details = Json::object();

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            passed = false;
            failures.push_back(what);
        }
    }

    Json to_json() const {
        return Json{{"suite", name}, {"passed", passed}, {"checks", checks}, {"failures", failures}, {"details", details}};
    }
};

inline const std::array<std::string, 6>& suite_names() {
    static const std::array<std::string, 6> names{"poincare",  "extendability", "homotopy_groups",
                                                  "hirsch",    "apl_mod_p",     "gamma_oracle"};
    return names;
}

/// Reduced cohomology of truncated Ω_n vanishes for n ∈ {1, 2}.
inline SuiteResult verify_poincare(const std::vector<long>& primes, const std::vector<int>& weights) {
    SuiteResult r{"poincare"};
    Json cases = Json::array(), lattices = Json::array();
    for (long p : primes)
        for (int W : weights)
            for (int n = 1; n <= 2; ++n) {
                OmegaLattice L = build_omega(n, W, p);
                bool ok = poincare_lemma_holds(L);
                r.expect(ok, "n=" + std::to_string(n) + " W=" + std::to_string(W) + " p=" + std::to_string(p));
                cases.push_back(Json{{"n", n}, {"weight", W}, {"prime", p}, {"holds", ok}});
                lattices.push_back(to_json(L));
            }
    r.details["cases"] = cases;
    r.details["lattices"] = lattices;
    return r;
}

/// (1, p) on ∂Δ^1 has no extension (certificate checked independently); (p, p) does.
inline SuiteResult verify_extendability(const std::vector<long>& primes, int max_weight) {
    SuiteResult r{"extendability"};
    Json cases = Json::array();
    for (long p : primes)
        for (int W = 1; W <= max_weight; ++W) {
            ExtendabilityWitness w = extendability_witness(W, p);
            ExtendabilityWitness c = extendability_witness(W, p, p, Rational(p));
            const std::string tag = "W=" + std::to_string(W) + " p=" + std::to_string(p);
            r.expect(!w.extendable && verify_extendability_certificate(w), "(1, p) certificate " + tag);
            r.expect(c.extendable, "(p, p) control " + tag);
            Json e{{"weight", W}, {"prime", p}, {"extendable", w.extendable}, {"control_extendable", c.extendable}};
            if (w.certificate) e["certificate"] = to_json(*w.certificate);
            cases.push_back(std::move(e));
        }
    r.details["cases"] = cases;
    return r;
}

/// π_k(Ω^k) = Z/p generated by dx_0∧…∧dx_{k-1}; π_k(Z^kΩ) generator of valuation k.
inline SuiteResult verify_homotopy_groups(const std::vector<long>& primes, int W) {
    SuiteResult r{"homotopy_groups"};
    Json cases = Json::array();
    for (long p : primes)
        for (int k = 0; k <= 1; ++k) {
            HomotopyGroupsReport h = homotopy_groups_check(k, W, p);
            r.expect(h.passed(), "k=" + std::to_string(k) + " W=" + std::to_string(W) + " p=" + std::to_string(p));
            Json pi_closed = Json::array();
            for (const auto& g : h.pi_closed) pi_closed.push_back(to_json(g));
            cases.push_back(Json{{"k", k},
                                 {"prime", p},
                                 {"pi_k_omega", to_json(h.pi_omega.back())},
                                 {"pi_closed", pi_closed},
                                 {"generator_ok", h.generator_ok},
                                 {"closed_valuation", h.closed_valuation},
                                 {"closed_torsion_free", h.closed_torsion_free()},
                                 {"notes", h.notes}});
        }
    r.details["cases"] = cases;
    return r;
}

/// Hirsch formula and the ∪_i coboundary identities on all basis cochains, plus Sq^1 ≠ 0 on H^1(RP^2; F_2).
inline SuiteResult verify_hirsch(const std::vector<std::string>& spaces = {"rp2", "sphere:2"}) {
    SuiteResult r{"hirsch"};
    for (const auto& nm : spaces) {
        SimplicialSet X = space_from_spec(nm);
        for (RingTag ring : {RingTag::field(2), RingTag::integer(2)}) {
            std::vector<std::vector<Cochain>> basis(static_cast<std::size_t>(X.dim()) + 1);
            for (int q = 0; q <= X.dim(); ++q)
                for (std::size_t k = 0; k < X.count(q); ++k) basis[static_cast<std::size_t>(q)].push_back(basis_cochain(X, q, k, ring));
            bool hirsch = true, coboundary = true;
            for (int p = 0; p <= X.dim(); ++p)
                for (int q = 0; q <= X.dim(); ++q) {
                    for (int s = 1; s <= X.dim() && p + q + s - 1 <= X.dim(); ++s)
                        for (const auto& a : basis[static_cast<std::size_t>(p)])
                            for (const auto& b : basis[static_cast<std::size_t>(q)])
                                for (const auto& c : basis[static_cast<std::size_t>(s)]) hirsch = hirsch && hirsch_check(X, a, b, c).holds;
                    for (int i = 0; i <= std::min(p, q) && p + q - i + 1 <= X.dim(); ++i)
                        for (const auto& a : basis[static_cast<std::size_t>(p)])
                            for (const auto& b : basis[static_cast<std::size_t>(q)])
                                coboundary = coboundary && is_zero(cup_i_coboundary_defect(X, a, b, i));
                }
            r.expect(hirsch, "Hirsch identity on " + nm + " over " + ring.name());
            r.expect(coboundary, "cup-i coboundary identity on " + nm + " over " + ring.name());
        }
    }
    SimplicialSet P = standard_space("rp2");
    RingTag F = RingTag::field(2);
    CohomologyReport R = cohomology_ring(P, F);
    Cochain x = make_cochain(P, 1, F, R.degrees[1].generators[0]);
    auto sq1 = R.degrees[2].classify(steenrod_square(P, x, 1).values);
    bool nonzero = sq1 && !is_zero_vec(*sq1);
    r.expect(nonzero, "Sq^1 on H^1(RP^2; F_2) is nonzero");
    r.details["sq1_rp2"] = sq1 ? to_json(*sq1) : Json(nullptr);
    return r;
}

/// H(A_PL(Δ^n) ⊗ F_p) within weight is spanned by the predicted monomials.
inline SuiteResult verify_apl(long p, int W) {
    SuiteResult r{"apl_mod_p"};
    Json cases = Json::array();
    for (int n = 1; n <= 2; ++n) {
        AplComplex A = apl_mod_p(n, p, W);
        for (int k = 0; k <= n; ++k) {
            bool ok = apl_classes_match(A, k);
            r.expect(ok, "n=" + std::to_string(n) + " k=" + std::to_string(k));
            Json mons = Json::array();
            for (const auto& m : apl_predicted_classes(A, k)) mons.push_back(m.str());
            cases.push_back(Json{{"n", n}, {"degree", k}, {"classes", mons}, {"match", ok}});
        }
    }
    r.details["prime"] = p;
    r.details["weight"] = W;
    r.details["cases"] = cases;
    return r;
}

inline SuiteResult verify_gamma_oracle(int L = 4) {
    SuiteResult r{"gamma_oracle"};
    for (int l = 1; l <= L; ++l) {
        GammaOracleReport g = gamma_tensor_oracle(l);
        r.expect(g.passed(), "word length " + std::to_string(l) + (g.failures.empty() ? "" : ": " + g.failures.front()));
        r.checks += g.checks;
    }
    return r;
}

/// One suite at the session configuration.
inline SuiteResult run_suite(const std::string& name, const SessionConfig& cfg) {
    if (name == "poincare") return verify_poincare({cfg.prime}, {cfg.weight});
    if (name == "extendability") return verify_extendability({cfg.prime}, cfg.weight);
    if (name == "homotopy_groups") return verify_homotopy_groups({cfg.prime}, cfg.weight);
    if (name == "hirsch") return verify_hirsch();
    if (name == "apl_mod_p") return verify_apl(cfg.prime, 2 * cfg.weight);
    if (name == "gamma_oracle") return verify_gamma_oracle();
    throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace padic
