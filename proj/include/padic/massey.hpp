#pragma once

// Triple Massey products with indeterminacy over Z/p^k, the p-power scaling
// check, and the m(a,b,a) obstruction to strict commutativity over F_2.

#include "padic/cochain_ops.hpp"
#include "padic/decalage.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace padic {

/// A finitely generated dg-algebra over Z/p^k with the product (and optionally
/// ∪_1) given on coordinate vectors.  Sign rule: d(xy) = dx·y + (-1)^{|x|} x·dy.
struct DGAlgebra {
    using Op = std::function<IntVec(int, const IntVec&, int, const IntVec&)>;

    std::string label;
    RingTag ring;
    CochainComplex complex;
    std::vector<std::vector<std::string>> names;  // per degree, optional
    Op mul;
    Op cup1;                                      // empty when not available
    std::vector<AbelianGroupReport> H;            // filled by finish()

    int top() const { return complex.top(); }
    std::size_t dim(int q) const { return complex.dim(q); }
    BigInt modulus() const { return ring.modulus(); }
    IntVec zero(int q) const { return q < 0 || q > top() ? IntVec{} : IntVec(dim(q), BigInt(0)); }
    IntVec reduce(IntVec v) const { return reduce_mod(std::move(v), modulus()); }

    IntVec d(int q, const IntVec& x) const { return complex.apply_d(q, x); }
    bool is_cocycle(int q, const IntVec& x) const { return is_zero_vec(d(q, x)); }

    IntVec product(int da, const IntVec& a, int db, const IntVec& b) const {
        if (da + db > top()) return {};
        return reduce(mul(da, a, db, b));
    }
    IntVec product1(int da, const IntVec& a, int db, const IntVec& b) const {
        if (!cup1) throw std::logic_error(label + " has no cup-1 product");
        if (da + db - 1 > top() || da + db - 1 < 0) return {};
        return reduce(cup1(da, a, db, b));
    }
    const AbelianGroupReport& cohomology(int q) const { return H.at(static_cast<std::size_t>(q)); }

    /// Position of a named basis element.
    std::pair<int, std::size_t> find(const std::string& nm) const {
        for (std::size_t q = 0; q < names.size(); ++q)
            for (std::size_t i = 0; i < names[q].size(); ++i)
                if (names[q][i] == nm) return {static_cast<int>(q), i};
        throw ConfigError("no basis element named '" + nm + "' in " + label);
    }

    void finish() {
        if (!ring.is_modular()) throw ConfigError("Massey products are computed over Z/p^k");
        complex.check();
        H.clear();
        for (int q = 0; q <= top(); ++q) H.push_back(complex.cohomology(q));
    }
};

namespace detail {

inline IntVec axpy(IntVec y, const BigInt& f, const IntVec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += f * x[i];
    return y;
}

inline IntVec scaled(IntVec x, const BigInt& f) {
    for (auto& v : x) v *= f;
    return x;
}

/// (-1)^{|x|+1} x
inline IntVec bar(const IntVec& x, int deg) { return deg % 2 == 1 ? x : scaled(x, -1); }

}  // namespace detail

/// C*(X; Z/p^k) with the Alexander–Whitney cup and Steenrod's ∪_1.
inline DGAlgebra cochain_algebra(const SimplicialSet& X, const RingTag& ring) {
    DGAlgebra A;
    A.label = "C*(" + X.label() + ")";
    A.ring = ring;
    A.complex = normalized_cochain_complex(X, ring);
    for (int q = 0; q <= X.dim(); ++q) A.names.push_back(X.names(q));
    A.mul = [X, ring](int da, const IntVec& a, int db, const IntVec& b) {
        return cup(X, make_cochain(X, da, ring, a), make_cochain(X, db, ring, b)).values;
    };
    A.cup1 = [X, ring](int da, const IntVec& a, int db, const IntVec& b) {
        return cup_i_or_zero(X, make_cochain(X, da, ring, a), make_cochain(X, db, ring, b), 1).values;
    };
    A.finish();
    return A;
}

/// A shifted sublattice (D*(X), V*(X)) of C*(X; Z) reduced mod p^k, in lattice coordinates.
inline DGAlgebra shifted_algebra(const SimplicialSet& X, const ShiftedComplex& S, int exponent) {
    DGAlgebra A;
    A.label = S.rule + "*(" + X.label() + ")";
    A.ring = RingTag::modular(S.prime, exponent);
    A.complex = S.complex.with_ring(A.ring);
    auto shared = std::make_shared<ShiftedComplex>(S);
    const RingTag Z = RingTag::integer(S.prime);
    A.mul = [X, shared, Z](int da, const IntVec& a, int db, const IntVec& b) {
        Cochain x = make_cochain(X, da, Z, shared->basis[static_cast<std::size_t>(da)].apply(a));
        Cochain y = make_cochain(X, db, Z, shared->basis[static_cast<std::size_t>(db)].apply(b));
        auto c = shared->coordinates(da + db, cup(X, x, y).values);
        if (!c) throw StructuralError(shared->rule + ": product leaves the lattice");
        return *c;
    };
    A.finish();
    return A;
}

/// Omega(X) (or any evaluated level model with a product) reduced mod p^k.
inline DGAlgebra model_algebra(std::shared_ptr<const LevelModel> model, const ModelComplex& M, int exponent,
                               const std::string& label) {
    if (!model->has_product()) throw ConfigError(model->name() + " has no product");
    DGAlgebra A;
    A.label = label;
    A.ring = RingTag::modular(M.prime, exponent);
    A.complex = M.complex.with_ring(A.ring);
    auto shared = std::make_shared<ModelComplex>(M);
    A.mul = [model, shared](int da, const IntVec& a, int db, const IntVec& b) {
        RatVec ab = model_product(*model, *shared, da, shared->to_ambient(da, a), db, shared->to_ambient(db, b));
        auto c = shared->coordinates(da + db, ab);
        if (!c) throw StructuralError(model->name() + ": product leaves the lattice");
        return *c;
    };
    A.finish();
    return A;
}

// ---- fixtures ---------------------------------------------------------------
//   { "name": "...", "prime": 2, "exponent": 1,
//     "basis": [["1"], ["a", "b", "u"], ["x"]],
//     "unit": "1",
//     "differential": {"u": {"x": 1}},
//     "product": [["a", "b", {"x": 1}]],
//     "cup1": [["a", "a", {"e": 1}]],
//     "classes": {"a": {"a": 1}} }
// Products not listed are zero; products with the unit are implied.

struct Fixture {
    DGAlgebra algebra;
    std::map<std::string, std::pair<int, IntVec>> classes;  // named cochains
};

namespace detail {

using Table = std::map<std::tuple<int, std::size_t, int, std::size_t>, IntVec>;

inline IntVec table_op(const Table& t, const std::vector<std::size_t>& dims, int da, const IntVec& a, int db,
                       const IntVec& b, int shift) {
    const int q = da + db - shift;
    IntVec out(q < 0 || q >= static_cast<int>(dims.size()) ? 0 : dims[static_cast<std::size_t>(q)], BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            auto it = t.find({da, i, db, j});
            if (it != t.end()) out = axpy(out, a[i] * b[j], it->second);
        }
    }
    return out;
}

}  // namespace detail

inline Fixture load_fixture(const nlohmann::json& js) {
    auto fail = [](const std::string& m) -> ConfigError { return ConfigError("fixture: " + m); };
    Fixture F;
    DGAlgebra& A = F.algebra;
    try {
        A.label = js.value("name", std::string("fixture"));
        A.ring = RingTag::modular(js.at("prime").get<long>(), js.value("exponent", 1));
        for (const auto& deg : js.at("basis")) A.names.push_back(deg.get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
        throw fail(e.what());
    }
    std::vector<std::size_t> dims;
    std::set<std::string> seen;
    for (const auto& deg : A.names) {
        dims.push_back(deg.size());
        for (const auto& nm : deg)
            if (!seen.insert(nm).second) throw fail("duplicate basis name '" + nm + "'");
    }
    if (dims.empty()) throw fail("empty basis");
    A.complex = CochainComplex(A.ring, dims);

    auto vector_of = [&](const nlohmann::json& v, int expect) {
        IntVec out = A.zero(expect);
        for (const auto& [nm, c] : v.items()) {
            auto [q, i] = A.find(nm);
            if (q != expect) throw fail("'" + nm + "' has degree " + std::to_string(q) + ", expected " + std::to_string(expect));
            out[i] += c.get<long>();
        }
        return A.reduce(out);
    };

    try {
        if (js.contains("differential"))
            for (const auto& [nm, img] : js.at("differential").items()) {
                auto [q, i] = A.find(nm);
                if (q >= A.top()) throw fail("differential of top-degree element '" + nm + "'");
                A.complex.d[static_cast<std::size_t>(q)].set_column(i, vector_of(img, q + 1));
            }
        auto read_table = [&](const char* key, int shift) {
            auto t = std::make_shared<detail::Table>();
            if (!js.contains(key)) return t;
            for (const auto& e : js.at(key)) {
                auto [qa, i] = A.find(e.at(0).get<std::string>());
                auto [qb, j] = A.find(e.at(1).get<std::string>());
                if (qa + qb - shift > A.top() || qa + qb - shift < 0) throw fail(std::string(key) + " entry out of degree range");
                (*t)[{qa, i, qb, j}] = vector_of(e.at(2), qa + qb - shift);
            }
            return t;
        };
        auto mul = read_table("product", 0);
        if (js.contains("unit")) {
            auto [q0, u] = A.find(js.at("unit").get<std::string>());
            if (q0 != 0) throw fail("unit must have degree 0");
            for (int q = 0; q <= A.top(); ++q)
                for (std::size_t i = 0; i < A.dim(q); ++i) {
                    IntVec e = A.zero(q);
                    e[i] = 1;
                    (*mul)[{0, u, q, i}] = e;
                    (*mul)[{q, i, 0, u}] = e;
                }
        }
        auto c1 = read_table("cup1", 1);
        A.mul = [mul, dims](int da, const IntVec& a, int db, const IntVec& b) {
            return detail::table_op(*mul, dims, da, a, db, b, 0);
        };
        if (js.contains("cup1"))
            A.cup1 = [c1, dims](int da, const IntVec& a, int db, const IntVec& b) {
                return detail::table_op(*c1, dims, da, a, db, b, 1);
            };
        if (js.contains("classes"))
            for (const auto& [nm, v] : js.at("classes").items()) {
                if (v.empty()) throw fail("class '" + nm + "' is empty");
                int q = A.find(v.begin().key()).first;
                F.classes[nm] = {q, vector_of(v, q)};
            }
    } catch (const nlohmann::json::exception& e) {
        throw fail(e.what());
    }

    try {
        A.finish();
    } catch (const StructuralError& e) {
        throw fail(e.what());
    }
    // Leibniz and associativity on basis elements
    auto unit = [&](int q, std::size_t i) {
        IntVec e = A.zero(q);
        e[i] = 1;
        return e;
    };
    for (int p = 0; p <= A.top(); ++p)
        for (int q = 0; p + q <= A.top(); ++q)
            for (std::size_t i = 0; i < A.dim(p); ++i)
                for (std::size_t j = 0; j < A.dim(q); ++j) {
                    IntVec x = unit(p, i), y = unit(q, j);
                    IntVec lhs = A.d(p + q, A.product(p, x, q, y));
                    IntVec rhs = A.zero(p + q + 1);
                    if (p + q + 1 <= A.top()) {
                        rhs = detail::axpy(rhs, 1, A.product(p + 1, A.d(p, x), q, y));
                        rhs = detail::axpy(rhs, p % 2 == 0 ? 1 : -1, A.product(p, x, q + 1, A.d(q, y)));
                    }
                    if (A.reduce(lhs) != A.reduce(rhs))
                        throw fail("Leibniz rule fails on " + A.names[static_cast<std::size_t>(p)][i] + "·" +
                                   A.names[static_cast<std::size_t>(q)][j]);
                    for (int r = 0; p + q + r <= A.top(); ++r)
                        for (std::size_t k = 0; k < A.dim(r); ++k) {
                            IntVec z = unit(r, k);
                            if (A.product(p + q, A.product(p, x, q, y), r, z) != A.product(p, x, q + r, A.product(q, y, r, z)))
                                throw fail("product is not associative on " + A.names[static_cast<std::size_t>(p)][i] + ", " +
                                           A.names[static_cast<std::size_t>(q)][j] + ", " + A.names[static_cast<std::size_t>(r)][k]);
                        }
                }
    return F;
}

inline Fixture load_fixture_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open fixture '" + path + "'");
    nlohmann::json js;
    try {
        f >> js;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("fixture '" + path + "': " + e.what());
    }
    return load_fixture(js);
}

// ---- triple products ----------------------------------------------------------

class UndefinedMassey : public std::runtime_error {
public:
    UndefinedMassey(const std::string& which, int degree, IntVec cls)
        : std::runtime_error("undefined Massey product: " + which + " is nonzero in H^" + std::to_string(degree) +
                             " (class " + format(cls) + ")"),
          degree(degree), obstruction(std::move(cls)) {}
    int degree;
    IntVec obstruction;

private:
    static std::string format(const IntVec& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
        return s + ")";
    }
};

struct MasseyResult {
    int degree = 0;
    IntVec representative;              // cocycle
    IntVec representative_class;        // coordinates in the H^degree generators
    std::vector<IntVec> indeterminacy;  // cocycles a·h and h·c
    std::vector<IntVec> indeterminacy_classes;
    IntVec u, v;                        // du = ā·b, dv = b̄·c
    bool vanishes = false;              // 0 ∈ representative + indeterminacy
};

struct MasseyOptions {
    std::optional<unsigned> perturb_seed;  // add random cocycles to u and v
};

namespace detail {

/// Whether the class `cls` lies in the subgroup of H generated by `gens`.
inline bool in_class_span(const AbelianGroupReport& H, const IntVec& cls, const std::vector<IntVec>& gens) {
    if (H.rank() == 0) return true;
    IntMatrix G(H.rank(), gens.size() + H.rank());
    for (std::size_t j = 0; j < gens.size(); ++j) G.set_column(j, gens[j]);
    for (std::size_t g = 0; g < H.rank(); ++g) G(g, gens.size() + g) = H.orders[g];
    return LinearSolver(G).solve_integer(cls).has_value();
}

inline IntVec class_of(const DGAlgebra& A, int q, const IntVec& x) {
    auto c = A.cohomology(q).classify(x);
    if (!c) throw StructuralError(A.label + ": expected a cocycle in degree " + std::to_string(q));
    return *c;
}

/// Some y with dy = x in degree q, or nullopt.
inline std::optional<IntVec> primitive(const DGAlgebra& A, int q, const IntVec& x) {
    if (q == 0) return is_zero_vec(A.reduce(x)) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
    return solve_mod(A.complex.d_in(q), x, A.modulus());
}

inline IntVec random_cocycle(const DGAlgebra& A, int q, std::mt19937& rng) {
    IntVec z = A.zero(q);
    if (z.empty()) return z;
    const IntMatrix& Z = A.cohomology(q).cocycles->matrix();
    BigInt m = A.modulus();
    for (std::size_t j = 0; j < Z.cols(); ++j) z = axpy(z, BigInt(static_cast<unsigned long>(rng())) % m, Z.column(j));
    return A.reduce(z);
}

}  // namespace detail

/// ⟨a, b, c⟩ = [ū·c + ā·v] with du = ā·b, dv = b̄·c and x̄ = (-1)^{|x|+1} x,
/// modulo a·H^{|b|+|c|-1} + H^{|a|+|b|-1}·c.
inline MasseyResult triple_massey(const DGAlgebra& A, int da, const IntVec& a, int db, const IntVec& b, int dc,
                                  const IntVec& c, const MasseyOptions& opt = {}) {
    if (da < 0 || db < 0 || dc < 0 || da > A.top() || db > A.top() || dc > A.top())
        throw std::invalid_argument("Massey product: degree out of range");
    if (a.size() != A.dim(da) || b.size() != A.dim(db) || c.size() != A.dim(dc))
        throw std::invalid_argument("Massey product: cochain length mismatch");
    if (!A.is_cocycle(da, a) || !A.is_cocycle(db, b) || !A.is_cocycle(dc, c))
        throw std::invalid_argument("Massey product: arguments must be cocycles");

    MasseyResult R;
    R.degree = da + db + dc - 1;
    const int qu = da + db - 1, qv = db + dc - 1;
    if (da + db <= A.top()) {
        IntVec ab = A.product(da, detail::bar(a, da), db, b);
        IntVec cls = detail::class_of(A, da + db, ab);
        auto u = detail::primitive(A, da + db, ab);
        if (!is_zero_vec(cls) || !u) throw UndefinedMassey("ā·b", da + db, cls);
        R.u = *u;
    } else {
        R.u = A.zero(qu);
    }
    if (db + dc <= A.top()) {
        IntVec bc = A.product(db, detail::bar(b, db), dc, c);
        IntVec cls = detail::class_of(A, db + dc, bc);
        auto v = detail::primitive(A, db + dc, bc);
        if (!is_zero_vec(cls) || !v) throw UndefinedMassey("b̄·c", db + dc, cls);
        R.v = *v;
    } else {
        R.v = A.zero(qv);
    }
    if (opt.perturb_seed) {
        std::mt19937 rng(*opt.perturb_seed);
        if (qu >= 0 && qu <= A.top()) R.u = A.reduce(detail::axpy(R.u, 1, detail::random_cocycle(A, qu, rng)));
        if (qv >= 0 && qv <= A.top()) R.v = A.reduce(detail::axpy(R.v, 1, detail::random_cocycle(A, qv, rng)));
    }
    if (R.degree < 0 || R.degree > A.top()) {  // the target group is zero
        R.vanishes = true;
        return R;
    }
    R.representative = A.zero(R.degree);
    if (qu >= 0) R.representative = detail::axpy(R.representative, 1, A.product(qu, detail::bar(R.u, qu), dc, c));
    if (qv >= 0) R.representative = detail::axpy(R.representative, 1, A.product(da, detail::bar(a, da), qv, R.v));
    R.representative = A.reduce(R.representative);
    R.representative_class = detail::class_of(A, R.degree, R.representative);

    if (qv >= 0)
        for (const auto& h : A.cohomology(qv).generators) R.indeterminacy.push_back(A.product(da, a, qv, h));
    if (qu >= 0)
        for (const auto& h : A.cohomology(qu).generators) R.indeterminacy.push_back(A.product(qu, h, dc, c));
    for (const auto& x : R.indeterminacy) R.indeterminacy_classes.push_back(detail::class_of(A, R.degree, x));
    R.vanishes = detail::in_class_span(A.cohomology(R.degree), R.representative_class, R.indeterminacy_classes);
    return R;
}

/// Whether the cocycle x lies in the coset of R.
inline bool coset_contains(const DGAlgebra& A, const MasseyResult& R, const IntVec& x) {
    if (R.degree < 0 || R.degree > A.top()) return true;
    IntVec diff = A.reduce(detail::axpy(x, -1, R.representative));
    return detail::in_class_span(A.cohomology(R.degree), detail::class_of(A, R.degree, diff), R.indeterminacy_classes);
}

/// Two results for the same (a, b, c) describe the same coset.
inline bool same_coset(const DGAlgebra& A, const MasseyResult& r, const MasseyResult& s) {
    return r.degree == s.degree && coset_contains(A, r, s.representative) && coset_contains(A, s, r.representative);
}

/// m(p^r a, p^s b, p^t c) contains p^{r+s+t}·m(a, b, c): the representative
/// difference lies in the indeterminacy of the scaled product.
inline bool massey_scaling_check(const DGAlgebra& A, int da, const IntVec& a, int db, const IntVec& b, int dc,
                                 const IntVec& c, int r, int s, int t) {
    if (r < 0 || s < 0 || t < 0) throw std::invalid_argument("scaling exponents must be >= 0");
    const long p = A.ring.prime;
    auto pw = [p](int e) { return pow_int(p, static_cast<unsigned long>(e)); };
    MasseyResult base = triple_massey(A, da, a, db, b, dc, c);
    MasseyResult scaled = triple_massey(A, da, A.reduce(detail::scaled(a, pw(r))), db, A.reduce(detail::scaled(b, pw(s))),
                                        dc, A.reduce(detail::scaled(c, pw(t))));
    if (base.degree < 0 || base.degree > A.top()) return true;
    return coset_contains(A, scaled, A.reduce(detail::scaled(base.representative, pw(r + s + t))));
}

struct RectificationVerdict {
    MasseyResult massey;                 // m(a, b, a)
    bool obstructed = false;             // m(a, b, a) does not contain 0
    bool has_cup1 = false;
    IntVec square_times_b;               // (a ∪_1 a)·b, a cocycle representing Sq^{|a|-1}(a)·b
    bool square_in_indeterminacy = false;
    bool square_is_value = false;        // (a ∪_1 a)·b ∈ m(a, b, a)

    std::string verdict() const { return obstructed ? "obstructed" : "not obstructed"; }
};

/// m(a, b, a) over F_2 and the Sq^{|a|-1}(a)·b route.
inline RectificationVerdict rectification_obstruction(const DGAlgebra& A, int da, const IntVec& a, int db,
                                                      const IntVec& b) {
    if (!(A.ring == RingTag::field(2))) throw ConfigError("the m(a,b,a) obstruction is computed over F_2");
    RectificationVerdict V;
    V.massey = triple_massey(A, da, a, db, b, da, a);
    V.obstructed = !V.massey.vanishes;
    V.has_cup1 = static_cast<bool>(A.cup1);
    if (V.has_cup1 && V.massey.degree >= 0 && V.massey.degree <= A.top() && 2 * da - 1 >= 0) {
        IntVec sq = A.product1(da, a, da, a);
        V.square_times_b = A.product(2 * da - 1, sq, db, b);
        IntVec cls = detail::class_of(A, V.massey.degree, V.square_times_b);
        V.square_in_indeterminacy =
            detail::in_class_span(A.cohomology(V.massey.degree), cls, V.massey.indeterminacy_classes);
        V.square_is_value = coset_contains(A, V.massey, V.square_times_b);
    }
    return V;
}

/// All values ū·c + ā·v over every defining system (F_p, small dimensions only),
/// returned as the set of cohomology classes.
inline std::set<IntVec> massey_values_exhaustive(const DGAlgebra& A, int da, const IntVec& a, int db, const IntVec& b,
                                                 int dc, const IntVec& c, std::size_t max_dim = 14) {
    if (A.ring.exponent != 1) throw ConfigError("exhaustive enumeration is over F_p");
    const int q = da + db + dc - 1, qu = da + db - 1, qv = db + dc - 1;
    const long p = A.ring.prime;
    auto all = [&](int deg, const IntVec& target, int tdeg) {
        std::vector<IntVec> out;
        if (deg < 0 || deg > A.top()) {
            if (deg > A.top() || is_zero_vec(A.reduce(target))) out.push_back(A.zero(deg));
            return out;
        }
        const std::size_t n = A.dim(deg);
        if (n > max_dim) throw ConfigError("too many cochains to enumerate");
        IntVec x(n, BigInt(0));
        for (;;) {
            IntVec dx = tdeg <= A.top() ? A.d(deg, x) : IntVec{};
            if (A.reduce(dx) == A.reduce(target)) out.push_back(x);
            std::size_t i = 0;
            while (i < n && x[i] == p - 1) x[i++] = 0;
            if (i == n) break;
            ++x[i];
        }
        return out;
    };
    IntVec ab = da + db <= A.top() ? A.product(da, detail::bar(a, da), db, b) : IntVec{};
    IntVec bc = db + dc <= A.top() ? A.product(db, detail::bar(b, db), dc, c) : IntVec{};
    std::set<IntVec> values;
    if (q < 0 || q > A.top()) return values;
    for (const auto& u : all(qu, ab, da + db))
        for (const auto& v : all(qv, bc, db + dc)) {
            IntVec x = A.zero(q);
            if (qu >= 0) x = detail::axpy(x, 1, A.product(qu, detail::bar(u, qu), dc, c));
            if (qv >= 0) x = detail::axpy(x, 1, A.product(da, detail::bar(a, da), qv, v));
            values.insert(detail::class_of(A, q, A.reduce(x)));
        }
    return values;
}

/// Classes of the coset of R (F_p only): representative plus the span of the indeterminacy.
inline std::set<IntVec> coset_classes(const DGAlgebra& A, const MasseyResult& R) {
    std::set<IntVec> out;
    if (R.degree < 0 || R.degree > A.top()) return out;
    const long p = A.ring.prime;
    const auto& gens = R.indeterminacy_classes;
    std::vector<long> coef(gens.size(), 0);
    for (;;) {
        IntVec x = R.representative_class;
        for (std::size_t i = 0; i < gens.size(); ++i) x = detail::axpy(x, coef[i], gens[i]);
        out.insert(A.reduce(x));
        std::size_t i = 0;
        while (i < coef.size() && coef[i] == p - 1) coef[i++] = 0;
        if (i == coef.size()) break;
        ++coef[i];
    }
    return out;
}

}  // namespace padic
