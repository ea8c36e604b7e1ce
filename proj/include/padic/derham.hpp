#pragma once

// p-adic de Rham forms.  Omega_n is the divided-power algebra on x_0..x_n
// modulo x_0 + ... + x_n = p, written in the chart x_1..x_n (x_0 = p - Σ x_i,
// dx_0 = -Σ dx_i).  Coordinates are divided-power coordinates, so the lattice
// is the set of vectors with p-integral entries.

#include "padic/level_model.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace padic {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kUnbounded = std::numeric_limits<int>::max();

// ---- divided-power monomials and forms ------------------------------------

/// x_1^[a_1] ... x_n^[a_n] dx_S, with S stored as a bitmask (bit k-1 for dx_k).
struct DividedMonomial {
    std::vector<int> a;
    unsigned dx = 0;

    DividedMonomial() = default;
    explicit DividedMonomial(std::vector<int> exps, unsigned mask = 0) : a(std::move(exps)), dx(mask) {}
    static DividedMonomial unit(int n) { return DividedMonomial(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int n() const { return static_cast<int>(a.size()); }
    int degree() const { return std::popcount(dx); }
    int weight() const {
        int w = degree();
        for (int e : a) w += e;
        return w;
    }
    bool has_dx(int k) const { return (dx >> (k - 1)) & 1u; }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 1; k <= n(); ++k) {
            int e = a[static_cast<std::size_t>(k - 1)];
            if (e == 0) continue;
            os << (first ? "" : " ") << "x" << k;
            if (e > 1) os << "^[" << e << "]";
            first = false;
        }
        for (int k = 1; k <= n(); ++k) {
            if (!has_dx(k)) continue;
            os << (first ? "" : (k == std::countr_zero(dx) + 1 ? " " : "^")) << "dx" << k;
            first = false;
        }
        return first ? "1" : os.str();
    }

    friend auto operator<=>(const DividedMonomial&, const DividedMonomial&) = default;
    friend bool operator==(const DividedMonomial&, const DividedMonomial&) = default;
};

/// Sign of dx_S ∧ dx_T -> dx_{S∪T} (S and T disjoint).
inline int wedge_sign(unsigned s, unsigned t) {
    int swaps = 0;
    for (unsigned rest = t; rest; rest &= rest - 1) {
        unsigned bit = rest & (~rest + 1);
        swaps += std::popcount(s & ~((bit << 1) - 1));
    }
    return swaps % 2 ? -1 : 1;
}

/// Finite combination of divided monomials with rational coefficients.
struct OmegaElement {
    int n = 0;
    std::map<DividedMonomial, Rational> terms;

    explicit OmegaElement(int vars = 0) : n(vars) {}
    static OmegaElement constant(int n, const Rational& c) {
        OmegaElement e(n);
        e.add(DividedMonomial::unit(n), c);
        return e;
    }
    static OmegaElement of(const DividedMonomial& m, const Rational& c = 1) {
        OmegaElement e(m.n());
        e.add(m, c);
        return e;
    }

    void add(const DividedMonomial& m, const Rational& c) {
        if (c == 0) return;
        if (m.n() != n) throw std::invalid_argument("monomial has the wrong number of variables");
        Rational& slot = terms[m];
        slot += c;
        if (slot == 0) terms.erase(m);
    }
    OmegaElement& operator+=(const OmegaElement& o) {
        for (const auto& [m, c] : o.terms) add(m, c);
        return *this;
    }
    friend OmegaElement operator+(OmegaElement a, const OmegaElement& b) { return a += b; }
    friend OmegaElement operator-(OmegaElement a, const OmegaElement& b) { return a += b.scaled(-1); }
    OmegaElement scaled(const Rational& s) const {
        OmegaElement e(n);
        for (const auto& [m, c] : terms) e.add(m, c * s);
        return e;
    }

    bool is_zero() const { return terms.empty(); }
    int weight() const {
        int w = -1;
        for (const auto& kv : terms) w = std::max(w, kv.first.weight());
        return w;
    }
    bool p_integral(long p) const {
        for (const auto& kv : terms)
            if (valuation(kv.second, p) < Valuation::of(0)) return false;
        return true;
    }
    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms) {
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            Rational a = abs(c);
            std::string ms = m.str();
            if (ms == "1") os << a.get_str();
            else if (a == 1) os << ms;
            else os << a.get_str() << " " << ms;
            first = false;
        }
        return os.str();
    }
    friend bool operator==(const OmegaElement& a, const OmegaElement& b) { return a.n == b.n && a.terms == b.terms; }
};

/// Product of two divided monomials: binomial coefficient per shared variable,
/// Koszul sign from the dx factors, dx^2 = 0.
inline OmegaElement gamma_multiply(const DividedMonomial& m1, const DividedMonomial& m2, int W = kUnbounded) {
    if (m1.n() != m2.n()) throw std::invalid_argument("multiplying forms on different simplices");
    OmegaElement out(m1.n());
    if (m1.dx & m2.dx) return out;
    if (W != kUnbounded && m1.weight() + m2.weight() > W)
        throw TruncationError("product " + m1.str() + " * " + m2.str() + " exceeds weight " + std::to_string(W));
    DividedMonomial m(std::vector<int>(m1.a.size()), m1.dx | m2.dx);
    BigInt coeff = wedge_sign(m1.dx, m2.dx);
    for (std::size_t i = 0; i < m1.a.size(); ++i) {
        m.a[i] = m1.a[i] + m2.a[i];
        coeff *= binomial(static_cast<unsigned long>(m.a[i]), static_cast<unsigned long>(m1.a[i]));
    }
    out.add(m, Rational(coeff));
    return out;
}

inline OmegaElement multiply(const OmegaElement& a, const OmegaElement& b, int W = kUnbounded) {
    if (a.n != b.n) throw std::invalid_argument("multiplying forms on different simplices");
    OmegaElement out(a.n);
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) out += gamma_multiply(m1, m2, W).scaled(c1 * c2);
    return out;
}

/// d(x^[a] dx_S) = Σ_i x^[a - e_i] dx_i ∧ dx_S.
inline OmegaElement differential(const OmegaElement& f) {
    OmegaElement out(f.n);
    for (const auto& [m, c] : f.terms)
        for (int i = 1; i <= f.n; ++i) {
            if (m.a[static_cast<std::size_t>(i - 1)] == 0 || m.has_dx(i)) continue;
            DividedMonomial t = m;
            t.a[static_cast<std::size_t>(i - 1)] -= 1;
            unsigned bit = 1u << (i - 1);
            t.dx |= bit;
            out.add(t, c * wedge_sign(bit, m.dx));
        }
    return out;
}

/// c + Σ c_j x_j on a chart with n variables.
struct LinearForm {
    Rational constant = 0;
    RatVec coeffs;

    int n() const { return static_cast<int>(coeffs.size()); }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) {
        a.constant += b.constant;
        for (std::size_t j = 0; j < a.coeffs.size(); ++j) a.coeffs[j] += b.coeffs[j];
        return a;
    }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// x_r in the chart of level n (x_0 = p - Σ x_i).
inline LinearForm chart_variable(int n, int r, long p) {
    LinearForm L{0, RatVec(static_cast<std::size_t>(n), Rational(0))};
    if (r == 0) {
        L.constant = p;
        for (auto& c : L.coeffs) c = -1;
    } else {
        L.coeffs[static_cast<std::size_t>(r - 1)] = 1;
    }
    return L;
}

/// γ^k(c + Σ c_j x_j) = Σ γ^i(c) Π c_j^{m_j} x_j^[m_j] over i + Σ m_j = k.
inline OmegaElement gamma_of_sum(const LinearForm& L, int k, int W = kUnbounded) {
    if (k < 0) throw std::invalid_argument("negative divided power");
    if (W != kUnbounded && k > W) throw TruncationError("divided power " + std::to_string(k) + " exceeds weight " + std::to_string(W));
    OmegaElement out(L.n());
    std::vector<int> m(static_cast<std::size_t>(L.n()), 0);
    std::function<void(int, int, Rational)> rec = [&](int j, int left, Rational coeff) {
        if (j == L.n()) {
            out.add(DividedMonomial(m), coeff * divided_power_of_scalar(L.constant, static_cast<unsigned long>(left)));
            return;
        }
        const Rational& c = L.coeffs[static_cast<std::size_t>(j)];
        Rational pw = 1;
        for (int e = 0; e <= left; ++e) {
            if (e > 0 && c == 0) break;
            m[static_cast<std::size_t>(j)] = e;
            rec(j + 1, left - e, coeff * pw);
            pw *= c;
        }
        m[static_cast<std::size_t>(j)] = 0;
    };
    rec(0, k, Rational(1));
    return out;
}

/// dL = Σ c_j dx_j.
inline OmegaElement differential_of(const LinearForm& L) {
    OmegaElement out(L.n());
    for (int j = 1; j <= L.n(); ++j) {
        DividedMonomial m = DividedMonomial::unit(L.n());
        m.dx = 1u << (j - 1);
        out.add(m, L.coeffs[static_cast<std::size_t>(j - 1)]);
    }
    return out;
}

/// Algebra map sending the chart variable x_k to images[k-1] (forms on a chart with `target` variables).
inline OmegaElement substitute(const OmegaElement& f, const std::vector<LinearForm>& images, int target) {
    if (static_cast<int>(images.size()) != f.n) throw std::invalid_argument("substitution arity mismatch");
    OmegaElement out(target);
    for (const auto& [m, c] : f.terms) {
        OmegaElement prod = OmegaElement::constant(target, c);
        for (int k = 1; k <= f.n && !prod.is_zero(); ++k) {
            int e = m.a[static_cast<std::size_t>(k - 1)];
            if (e > 0) prod = multiply(prod, gamma_of_sum(images[static_cast<std::size_t>(k - 1)], e));
        }
        for (int k = 1; k <= f.n && !prod.is_zero(); ++k)
            if (m.has_dx(k)) prod = multiply(prod, differential_of(images[static_cast<std::size_t>(k - 1)]));
        out += prod;
    }
    return out;
}

/// Chart images of x_1..x_n under d_i : Omega_n -> Omega_{n-1}
/// (x_k -> x_k for k < i, 0 for k = i, x_{k-1} for k > i).
inline std::vector<LinearForm> face_images(int n, int i, long p) {
    if (n < 1 || i < 0 || i > n) throw std::invalid_argument("face index out of range");
    std::vector<LinearForm> out;
    for (int k = 1; k <= n; ++k) {
        if (k < i) out.push_back(chart_variable(n - 1, k, p));
        else if (k == i) out.push_back(LinearForm{0, RatVec(static_cast<std::size_t>(n - 1), Rational(0))});
        else out.push_back(chart_variable(n - 1, k - 1, p));
    }
    return out;
}

/// Chart images under s_i : Omega_n -> Omega_{n+1}
/// (x_k -> x_k for k < i, x_k + x_{k+1} for k = i, x_{k+1} for k > i).
inline std::vector<LinearForm> degeneracy_images(int n, int i, long p) {
    if (n < 0 || i < 0 || i > n) throw std::invalid_argument("degeneracy index out of range");
    std::vector<LinearForm> out;
    for (int k = 1; k <= n; ++k) {
        if (k < i) out.push_back(chart_variable(n + 1, k, p));
        else if (k == i) out.push_back(chart_variable(n + 1, k, p) + chart_variable(n + 1, k + 1, p));
        else out.push_back(chart_variable(n + 1, k + 1, p));
    }
    return out;
}

inline OmegaElement omega_face(int n, int i, const OmegaElement& f, long p) {
    return substitute(f, face_images(n, i, p), n - 1);
}
inline OmegaElement omega_degeneracy(int n, int i, const OmegaElement& f, long p) {
    return substitute(f, degeneracy_images(n, i, p), n + 1);
}

/// dx_{r_1} ∧ ... ∧ dx_{r_k} at level n, for full indices r in 0..n.
inline OmegaElement wedge_of_differentials(int n, const std::vector<int>& rs, long p) {
    OmegaElement out = OmegaElement::constant(n, 1);
    for (int r : rs) out = multiply(out, differential_of(chart_variable(n, r, p)));
    return out;
}

/// dx_0 ∧ ... ∧ dx_{k-1} at level n.
inline OmegaElement standard_wedge(int n, int k, long p) {
    std::vector<int> rs(static_cast<std::size_t>(k));
    std::iota(rs.begin(), rs.end(), 0);
    return wedge_of_differentials(n, rs, p);
}

// ---- truncated bases -------------------------------------------------------

/// Divided monomials of level n, form degree k and weight <= W.
struct OmegaBasis {
    int n = 0, degree = 0, W = 0;
    std::vector<DividedMonomial> monomials;
    std::map<DividedMonomial, std::size_t> index;

    std::size_t size() const { return monomials.size(); }

    RatVec coords(const OmegaElement& e) const {
        if (e.n != n) throw std::invalid_argument("form lives on a different simplex");
        RatVec v(size(), Rational(0));
        for (const auto& [m, c] : e.terms) {
            auto it = index.find(m);
            if (it == index.end()) {
                if (m.degree() == degree && m.weight() > W)
                    throw TruncationError("term " + m.str() + " exceeds weight " + std::to_string(W));
                throw std::invalid_argument("term " + m.str() + " has the wrong form degree");
            }
            v[it->second] = c;
        }
        return v;
    }

    OmegaElement element(const RatVec& v) const {
        OmegaElement e(n);
        for (std::size_t i = 0; i < size(); ++i) e.add(monomials[i], v[i]);
        return e;
    }
};

inline OmegaBasis omega_basis(int n, int k, int W) {
    OmegaBasis B;
    B.n = n, B.degree = k, B.W = W;
    if (k < 0 || k > n || W < k) return B;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j == n) {
                B.index.emplace(DividedMonomial(a, mask), B.monomials.size());
                B.monomials.emplace_back(a, mask);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                a[static_cast<std::size_t>(j)] = e;
                rec(j + 1, left - e);
            }
            a[static_cast<std::size_t>(j)] = 0;
        };
        rec(0, W - k);
    }
    return B;
}

/// Omega as a level model truncated at weight W.
class OmegaModel : public LevelModel {
public:
    /// With quotient_product the product drops terms of weight > W (the
    /// quotient by the dg ideal of weight > W); otherwise it throws TruncationError.
    OmegaModel(long p, int W, bool quotient_product = false) : LevelModel(p), W_(W), quotient_(quotient_product) {
        if (W < 0) throw ConfigError("weight bound must be >= 0");
    }

    int weight() const { return W_; }
    bool quotient_product() const { return quotient_; }
    std::string name() const override { return "Omega"; }

    const OmegaBasis& basis(int level, int degree) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(level, degree);
        auto it = bases_.find(key);
        if (it == bases_.end()) it = bases_.emplace(key, omega_basis(level, degree, W_)).first;
        return it->second;
    }

    std::size_t dim(int level, int degree) const override { return basis(level, degree).size(); }
    bool has_product() const override { return true; }

    RatVec product(int level, int da, const RatVec& a, int db, const RatVec& b) const override {
        const OmegaBasis& out = basis(level, da + db);
        OmegaElement ab = multiply(basis(level, da).element(a), basis(level, db).element(b));
        if (quotient_)
            for (auto it = ab.terms.begin(); it != ab.terms.end();)
                it = it->first.weight() > W_ ? ab.terms.erase(it) : std::next(it);
        if (ab.is_zero()) return RatVec(out.size(), Rational(0));
        return out.coords(ab);
    }

protected:
    RatMatrix map_matrix(int level, int target, int degree, const std::function<OmegaElement(const OmegaElement&)>& f) const {
        const OmegaBasis& src = basis(level, degree);
        const OmegaBasis& dst = basis(target, degree);
        RatMatrix M(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            OmegaElement img = f(OmegaElement::of(src.monomials[j]));
            if (img.is_zero()) continue;
            M.set_column(j, dst.coords(img));
        }
        return M;
    }
    RatMatrix compute_face(int level, int i, int degree) const override {
        return map_matrix(level, level - 1, degree,
                          [&](const OmegaElement& e) { return omega_face(level, i, e, prime()); });
    }
    RatMatrix compute_degeneracy(int level, int i, int degree) const override {
        return map_matrix(level, level + 1, degree,
                          [&](const OmegaElement& e) { return omega_degeneracy(level, i, e, prime()); });
    }
    RatMatrix compute_differential(int level, int degree) const override {
        const OmegaBasis& src = basis(level, degree);
        const OmegaBasis& dst = basis(level, degree + 1);
        RatMatrix M(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            OmegaElement img = padic::differential(OmegaElement::of(src.monomials[j]));
            if (!img.is_zero()) M.set_column(j, dst.coords(img));
        }
        return M;
    }

private:
    int W_;
    bool quotient_ = false;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, OmegaBasis> bases_;
};

// ---- Omega_n and its closure lattice --------------------------------------

inline void check_omega_bounds(int n, int W) {
    if (n < 0 || n > 3) throw ConfigError("simplex level must be in 0..3, got " + std::to_string(n));
    if (W < 0 || W > 8) throw ConfigError("weight bound must be in 0..8, got " + std::to_string(W));
}

/// Admissible linear forms of level n: each x_r and each p - Σ_{i∈S} x_i for a
/// nonempty S missing at least one index (duplicates removed).
inline std::vector<LinearForm> admissible_forms(int n, long p, bool naive = false) {
    std::vector<LinearForm> out;
    auto push = [&](const LinearForm& L) {
        if (std::find(out.begin(), out.end(), L) == out.end()) out.push_back(L);
    };
    for (int r = 0; r <= n; ++r) push(chart_variable(n, r, p));
    if (naive) return out;
    for (unsigned S = 1; S + 1 < (1u << (n + 1)); ++S) {
        LinearForm L{p, RatVec(static_cast<std::size_t>(n), Rational(0))};
        for (int i = 0; i <= n; ++i)
            if ((S >> i) & 1u) {
                LinearForm x = chart_variable(n, i, p);
                L.constant -= x.constant;
                for (std::size_t j = 0; j < L.coeffs.size(); ++j) L.coeffs[j] -= x.coeffs[j];
            }
        push(L);
    }
    return out;
}

/// Z_(p)-span of all products of dx-monomials with Π γ^{e_L}(L), Σ e_L + deg <= W,
/// in divided-power coordinates, one lattice per form degree.
inline std::vector<PLocalLattice> closure_lattices(int n, int W, long p, const std::vector<LinearForm>& forms) {
    OmegaBasis B0 = omega_basis(n, 0, W);
    // span[w] = products with total divided-power exponent <= w
    std::vector<PLocalLattice> span;
    for (int w = 0; w <= W; ++w) {
        span.emplace_back(B0.size(), p);
        span.back().insert(B0.coords(OmegaElement::constant(n, 1)));
    }
    for (const auto& L : forms) {
        std::vector<OmegaElement> gam;
        for (int e = 0; e <= W; ++e) gam.push_back(gamma_of_sum(L, e));
        std::vector<PLocalLattice> next;
        for (int w = 0; w <= W; ++w) {
            PLocalLattice lat(B0.size(), p);
            for (int e = 0; e <= w; ++e)
                for (const auto& b : span[static_cast<std::size_t>(w - e)].basis())
                    lat.insert(B0.coords(multiply(B0.element(b), gam[static_cast<std::size_t>(e)])));
            next.push_back(std::move(lat));
        }
        span = std::move(next);
    }
    std::vector<PLocalLattice> out;
    for (int k = 0; k <= n; ++k) {
        OmegaBasis Bk = omega_basis(n, k, W);
        PLocalLattice lat(Bk.size(), p);
        if (W >= k) {
            for (unsigned T = 0; T < (1u << (n + 1)); ++T) {
                if (std::popcount(T) != k) continue;
                std::vector<int> rs;
                for (int r = 0; r <= n; ++r)
                    if ((T >> r) & 1u) rs.push_back(r);
                OmegaElement w = wedge_of_differentials(n, rs, p);
                for (const auto& b : span[static_cast<std::size_t>(W - k)].basis()) {
                    OmegaElement f = multiply(B0.element(b), w);
                    if (!f.is_zero()) lat.insert(Bk.coords(f));
                }
            }
        }
        out.push_back(std::move(lat));
    }
    return out;
}

inline PLocalLattice standard_lattice(std::size_t dim, long p) {
    PLocalLattice lat(dim, p);
    for (std::size_t i = 0; i < dim; ++i) {
        RatVec e(dim, Rational(0));
        e[i] = 1;
        lat.insert(e);
    }
    return lat;
}

/// Truncated Omega_n: divided-power bases per degree, the integer differential,
/// and the closure lattice compared against the divided-power lattice.
struct OmegaLattice {
    int n = 0, W = 0;
    long p = 2;
    std::vector<OmegaBasis> bases;           // degree 0..n
    std::vector<IntMatrix> d;                // d[k] : degree k -> k+1
    std::vector<PLocalLattice> closure;      // divided-power coordinates
    std::vector<bool> closure_is_dp;         // closure lattice == divided-power lattice
    std::vector<bool> naive_is_dp;           // same with only the forms x_r
    std::size_t admissible = 0;

    CochainComplex complex() const {
        std::vector<std::size_t> dims;
        for (const auto& b : bases) dims.push_back(b.size());
        CochainComplex C(RingTag::integer(p), dims);
        for (std::size_t k = 0; k < d.size(); ++k) C.d[k] = d[k];
        return C;
    }

    /// Closure basis in ordinary-monomial coordinates (x^[a] = x^a / a!).
    RatMatrix generator_matrix(int k) const {
        const OmegaBasis& B = bases[static_cast<std::size_t>(k)];
        auto gens = closure[static_cast<std::size_t>(k)].basis();
        RatMatrix G(B.size(), gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (std::size_t i = 0; i < B.size(); ++i) {
                BigInt f = 1;
                for (int e : B.monomials[i].a) f *= factorial(static_cast<unsigned long>(e));
                G(i, j) = gens[j][i] / Rational(f);
            }
        return G;
    }
};

inline OmegaLattice build_omega(int n, int W, long p) {
    check_omega_bounds(n, W);
    require_prime(p);
    OmegaLattice L;
    L.n = n, L.W = W, L.p = p;
    OmegaModel model(p, W);
    for (int k = 0; k <= n; ++k) L.bases.push_back(omega_basis(n, k, W));
    for (int k = 0; k < n; ++k) {
        auto [D, s] = clear_denominators(model.differential(n, k));
        if (s != 1) throw StructuralError("differential has non-integral divided-power coefficients");
        L.d.push_back(D);
    }
    for (std::size_t k = 1; k < L.d.size(); ++k)
        if (!(L.d[k] * L.d[k - 1]).is_zero()) throw StructuralError("d∘d != 0 on Omega_" + std::to_string(n));
    // structure maps must preserve the lattice (checked inside the model)
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; n >= 1 && i <= n; ++i) (void)model.face(n, i, k);
        for (int i = 0; i <= n; ++i) (void)model.degeneracy(n, i, k);
    }
    auto forms = admissible_forms(n, p);
    L.admissible = forms.size();
    L.closure = closure_lattices(n, W, p, forms);
    auto naive = closure_lattices(n, W, p, admissible_forms(n, p, true));
    for (int k = 0; k <= n; ++k) {
        PLocalLattice dp = standard_lattice(L.bases[static_cast<std::size_t>(k)].size(), p);
        L.closure_is_dp.push_back(same_lattice(L.closure[static_cast<std::size_t>(k)], dp));
        L.naive_is_dp.push_back(same_lattice(naive[static_cast<std::size_t>(k)], dp));
    }
    return L;
}

/// Reduced cohomology of truncated Omega_n vanishes (H^0 = Z_(p)·1, all else 0).
inline bool poincare_lemma_holds(const OmegaLattice& L) {
    CochainComplex C = L.complex();
    for (int k = 0; k <= L.n; ++k) {
        AbelianGroupReport h = C.cohomology(k);
        if (k == 0) {
            if (h.free_rank != 1 || !h.torsion.empty()) return false;
            IntVec one(L.bases[0].size(), BigInt(0));
            one[L.bases[0].index.at(DividedMonomial::unit(L.n))] = 1;
            auto c = h.classify(one);
            if (!c || vp((*c)[0], L.p) != 0) return false;
        } else if (!h.is_trivial()) {
            return false;
        }
    }
    return true;
}

/// Leibniz rule on all pairs of basis monomials with combined weight <= W.
inline bool omega_leibniz_check(int n, int W) {
    std::vector<DividedMonomial> all;
    for (int k = 0; k <= n; ++k)
        for (const auto& m : omega_basis(n, k, W).monomials) all.push_back(m);
    for (const auto& a : all)
        for (const auto& b : all) {
            if (a.weight() + b.weight() > W) continue;
            OmegaElement A = OmegaElement::of(a), B = OmegaElement::of(b);
            OmegaElement lhs = differential(multiply(A, B));
            OmegaElement rhs = multiply(differential(A), B) + multiply(A, differential(B)).scaled(a.degree() % 2 ? -1 : 1);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

/// Simplicial identities among face and degeneracy matrices at one level.
inline bool omega_simplicial_identities(const OmegaModel& A, int n) { return model_simplicial_identities(A, n); }

// ---- Omega(X) ---------------------------------------------------------------

struct OmegaSpace {
    std::shared_ptr<OmegaModel> model;
    ModelComplex complex;
    int W = 0, q_max = 0;

    /// Ambient vector carrying form f on one nondegenerate simplex and 0 elsewhere.
    RatVec on_cell(int q, SimplexRef cell, const OmegaElement& f) const {
        RatVec v(complex.ambient[static_cast<std::size_t>(q)], Rational(0));
        std::size_t ci = complex.cell_index(cell);
        RatVec c = model->basis(cell.dim, q).coords(f);
        for (std::size_t i = 0; i < c.size(); ++i) v[complex.offsets[static_cast<std::size_t>(q)][ci] + i] = c[i];
        return v;
    }

    /// The form on one simplex of an ambient vector.
    OmegaElement restrict_to(int q, const RatVec& v, SimplexRef cell) const {
        const OmegaBasis& B = model->basis(cell.dim, q);
        return B.element(complex.component(q, v, complex.cell_index(cell), B.size()));
    }

    RatVec constant(const Rational& c) const {
        RatVec v(complex.ambient[0], Rational(0));
        for (const auto& cell : complex.cells) {
            RatVec x = model->basis(cell.dim, 0).coords(OmegaElement::constant(cell.dim, c));
            for (std::size_t i = 0; i < x.size(); ++i) v[complex.offsets[0][complex.cell_index(cell) ] + i] = x[i];
        }
        return v;
    }
};

inline OmegaSpace omega_of_space(const SimplicialSet& X, int W, int q_max, long p) {
    check_omega_bounds(X.dim(), W);
    if (q_max < 0) throw ConfigError("max degree must be >= 0");
    OmegaSpace S;
    S.model = std::make_shared<OmegaModel>(p, W);
    S.W = W, S.q_max = q_max;
    S.complex = evaluate_model(*S.model, X, q_max + 1);
    return S;
}

/// Cohomology of Omega(X) with products, generator labels and a W vs W-1 stability flag.
inline CohomologyReport omega_cohomology(const SimplicialSet& X, int W, int q_max, long p) {
    OmegaSpace S = omega_of_space(X, W, q_max, p);
    CohomologyReport rep = model_cohomology(*S.model, S.complex, q_max);
    rep.labels.assign(rep.degrees.size(), {});
    for (std::size_t q = 0; q < rep.degrees.size(); ++q) rep.labels[q].assign(rep.degrees[q].rank(), "");

    auto try_label = [&](int q, const RatVec& v, const std::string& label) {
        auto c = S.complex.coordinates(q, v);
        if (!c) return;
        auto cls = rep.degrees[static_cast<std::size_t>(q)].classify(*c);
        if (!cls) return;
        // a unit multiple of one generator; a free generator may carry a torsion remainder
        std::size_t nfree = rep.degrees[static_cast<std::size_t>(q)].free_rank;
        std::vector<std::size_t> free_hits, torsion_hits;
        for (std::size_t g = 0; g < cls->size(); ++g)
            if ((*cls)[g] != 0) (g < nfree ? free_hits : torsion_hits).push_back(g);
        std::size_t hit;
        bool torsion_part = false;
        if (free_hits.size() == 1) {
            hit = free_hits[0];
            torsion_part = !torsion_hits.empty();
        } else if (free_hits.empty() && torsion_hits.size() == 1) {
            hit = torsion_hits[0];
        } else {
            return;
        }
        if (vp((*cls)[hit], p) != 0) return;
        std::string& slot = rep.labels[static_cast<std::size_t>(q)][hit];
        if (slot.empty()) slot = torsion_part ? label + " mod torsion" : label;
    };
    if (!rep.degrees.empty()) try_label(0, S.constant(1), "1");
    for (int q = 1; q <= q_max && q <= X.dim(); ++q) {
        std::string wedge;
        for (int r = 0; r < q; ++r) wedge += (r ? "∧dx_" : "dx_") + std::to_string(r);
        for (std::size_t j = 0; j < X.count(q); ++j) {
            SimplexRef cell{q, j};
            std::string label = X.count(q) > 1 ? wedge + " on " + X.name(cell) : wedge;
            try_label(q, S.on_cell(q, cell, standard_wedge(q, q, p)), label);
        }
    }

    if (W >= 1) {
        OmegaSpace prev = omega_of_space(X, W - 1, q_max, p);
        for (int q = 0; q <= q_max; ++q) {
            bool same = same_invariants(rep.degrees[static_cast<std::size_t>(q)], prev.complex.complex.cohomology(q));
            rep.stable.push_back(same);
            if (!same)
                rep.notes.push_back("weight " + std::to_string(W) + " and " + std::to_string(W - 1) +
                                    " disagree in degree " + std::to_string(q) + "; result not yet stable");
        }
    }
    return rep;
}

// ---- non-extendability ----------------------------------------------------

/// Can the pair (u at x_1 = p, c at x_1 = 0) on the boundary of the 1-simplex be
/// extended to a function in truncated Omega^0(Δ^1)?  Either a p-integral
/// preimage or a linear functional separating the target from all restrictions.
struct ExtendabilityWitness {
    int W = 0;
    long p = 2;
    Rational at_d0, at_d1;                  // required values of d_0 f = f(0, p) and d_1 f = f(p, 0)
    bool extendable = false;
    std::optional<OmegaElement> preimage;
    std::optional<RatVec> certificate;      // λ with λ·(d_0 g, d_1 g) ∈ Z_(p) for every basis g, λ·target ∉ Z_(p)
    std::vector<RatVec> restrictions;       // (d_0 g, d_1 g) for each basis monomial g
};

inline ExtendabilityWitness extendability_witness(int W, long p, const Rational& at_d0 = 1,
                                                  const std::optional<Rational>& at_d1 = std::nullopt) {
    if (W < 1) throw ConfigError("extendability needs weight >= 1");
    require_prime(p);
    ExtendabilityWitness w;
    w.W = W, w.p = p, w.at_d0 = at_d0, w.at_d1 = at_d1.value_or(Rational(p));
    OmegaBasis B = omega_basis(1, 0, W);
    for (const auto& m : B.monomials) {
        OmegaElement g = OmegaElement::of(m);
        auto value = [&](int i) {
            OmegaElement v = omega_face(1, i, g, p);
            auto it = v.terms.find(DividedMonomial::unit(0));
            return it == v.terms.end() ? Rational(0) : it->second;
        };
        w.restrictions.push_back(RatVec{value(0), value(1)});
    }
    MembershipResult r = lattice_membership_certified(RatVec{w.at_d0, w.at_d1}, w.restrictions, p);
    w.extendable = r.coefficients.has_value();
    if (r.coefficients) w.preimage = B.element(*r.coefficients);
    w.certificate = r.certificate;
    return w;
}

/// Independent check of a certificate: λ·g integral for every restriction, λ·target not.
inline bool verify_extendability_certificate(const ExtendabilityWitness& w) {
    if (!w.certificate) return false;
    for (const auto& g : w.restrictions)
        if (valuation(dot(*w.certificate, g), w.p) < Valuation::of(0)) return false;
    return valuation(dot(*w.certificate, RatVec{w.at_d0, w.at_d1}), w.p) < Valuation::of(0);
}

// ---- homotopy groups of Omega^k and Z^k Omega (normalized chains) ----------

struct HomotopyGroupsReport {
    int k = 0, W = 0;
    long p = 2;
    std::vector<AbelianGroupReport> pi_omega;   // π_i(Ω^k), i = 0..k
    std::vector<AbelianGroupReport> pi_closed;  // π_i(Z^kΩ), i = 0..k
    bool generator_ok = false;                  // dx_0∧…∧dx_{k-1} generates π_k(Ω^k)
    std::vector<Rational> ladder;               // the π_k(Z^k) generator pushed down to a constant, level by level
    long closed_valuation = -1;                 // p-valuation of that constant
    bool stable = true;
    std::vector<std::string> notes;

    /// π_k(Z^kΩ) is exactly free of rank one (no torsion beside the generator).
    bool closed_torsion_free() const { return !pi_closed.empty() && pi_closed.back().torsion.empty(); }

    /// π_i(Ω^k) = 0 for i < k, π_k(Ω^k) = Z/p generated by dx_0∧…∧dx_{k-1}, and the
    /// free generator of π_k(Z^kΩ) pushes down to a constant of valuation k.
    bool passed() const {
        if (pi_omega.size() != static_cast<std::size_t>(k) + 1) return false;
        for (int i = 0; i < k; ++i)
            if (!pi_omega[static_cast<std::size_t>(i)].is_trivial()) return false;
        const auto& top = pi_omega.back();
        bool omega_ok = top.free_rank == 0 && top.torsion == std::vector<BigInt>{BigInt(p)};
        bool closed_ok = pi_closed.back().free_rank == 1;
        return omega_ok && generator_ok && closed_ok && closed_valuation == k;
    }
};

namespace detail {

/// Normalized chains N_m = ∩_{i>=1} ker d_i of a simplicial submodule of Ω^k
/// spanned at each level by the columns of sub[m].
struct NormalizedChains {
    std::vector<IntMatrix> basis;  // ambient Ω^k_m coordinates
    std::vector<IntMatrix> del;    // del[m] : N_m -> N_{m-1} (del[0] has no rows)
};

inline NormalizedChains normalized_chains(const OmegaModel& A, int k, const std::vector<IntMatrix>& sub) {
    NormalizedChains N;
    const int top = static_cast<int>(sub.size()) - 1;
    for (int m = 0; m <= top; ++m) {
        const IntMatrix& B = sub[static_cast<std::size_t>(m)];
        if (m == 0 || B.cols() == 0) {
            N.basis.push_back(B);
            continue;
        }
        RatMatrix stacked(0, B.cols());
        for (int i = 1; i <= m; ++i) stacked = RatMatrix::vstack(stacked, A.face(m, i, k) * to_rational(B));
        IntMatrix E = clear_row_denominators(stacked);
        N.basis.push_back(E.rows() == 0 ? B : B * kernel_basis(E));
    }
    for (int m = 0; m <= top; ++m) {
        const IntMatrix& Nm = N.basis[static_cast<std::size_t>(m)];
        if (m == 0) {
            N.del.emplace_back(0, Nm.cols());
            continue;
        }
        const IntMatrix& Np = N.basis[static_cast<std::size_t>(m - 1)];
        LinearSolver solver(Np);
        RatMatrix img = A.face(m, 0, k) * to_rational(Nm);
        RatMatrix D(Np.cols(), Nm.cols());
        for (std::size_t j = 0; j < Nm.cols(); ++j) {
            auto c = solver.solve_plocal(img.column(j), A.prime());
            if (!c) throw StructuralError("d_0 leaves the normalized chains");
            D.set_column(j, *c);
        }
        N.del.push_back(clear_denominators(D).first);
    }
    return N;
}

/// π_i for i = 0..top-1 (π_i = ker del_i / im del_{i+1}).
inline std::vector<AbelianGroupReport> homotopy(const NormalizedChains& N, long p) {
    std::vector<AbelianGroupReport> out;
    for (std::size_t i = 0; i + 1 < N.basis.size(); ++i)
        out.push_back(cohomology(N.del[i + 1], N.del[i], RingTag::integer(p), static_cast<int>(i)));
    return out;
}

}  // namespace detail

inline HomotopyGroupsReport homotopy_groups_check(int k, int W, long p) {
    if (k < 0 || k > 2) throw ConfigError("homotopy check supports k in 0..2");
    check_omega_bounds(k + 1, W);
    HomotopyGroupsReport rep;
    rep.k = k, rep.W = W, rep.p = p;
    OmegaModel A(p, W);
    const int top = k + 1;

    std::vector<IntMatrix> full, closed;
    for (int m = 0; m <= top; ++m) {
        std::size_t n = A.dim(m, k);
        full.push_back(IntMatrix::identity(n));
        IntMatrix dk = clear_row_denominators(A.differential(m, k));
        closed.push_back(dk.rows() == 0 || n == 0 ? IntMatrix::identity(n) : kernel_basis(dk));
    }
    auto Nf = detail::normalized_chains(A, k, full);
    auto Nz = detail::normalized_chains(A, k, closed);
    rep.pi_omega = detail::homotopy(Nf, p);
    rep.pi_closed = detail::homotopy(Nz, p);

    // generator of π_k(Ω^k)
    {
        RatVec w = A.basis(k, k).coords(standard_wedge(k, k, p));
        LinearSolver s(Nf.basis[static_cast<std::size_t>(k)]);
        auto c = s.solve_plocal(w, p);
        const auto& g = rep.pi_omega.back();
        if (c) {
            auto [ci, den] = clear_denominators(RatMatrix::from_columns(c->size(), {*c}));
            auto cls = g.classify(ci.column(0));
            rep.generator_ok = cls && cls->size() == 1 && vp(den, p) == 0 && vp((*cls)[0], p) == 0;
        }
    }

    // push the π_k(Z^k) generator down: z = d f with f ∈ N_m(Ω^{j-1}), then z' = d_0 f
    const auto& zg = rep.pi_closed.back();
    if (zg.free_rank == 1) {
        RatVec z = to_rational(Nz.basis[static_cast<std::size_t>(k)].apply(zg.generators[0]));
        int j = k;
        for (int m = k; m >= 1; --m, --j) {
            RatMatrix M = A.differential(m, j - 1);
            RatVec rhs = z;
            for (int i = 1; i <= m; ++i) {
                M = RatMatrix::vstack(M, A.face(m, i, j - 1));
                rhs.resize(rhs.size() + A.dim(m - 1, j - 1), Rational(0));
            }
            auto [Mi, s] = clear_denominators(M);
            for (auto& x : rhs) x *= Rational(s);
            auto f = LinearSolver(Mi).solve_plocal(rhs, p);
            if (!f) {
                rep.notes.push_back("no normalized primitive at level " + std::to_string(m));
                break;
            }
            z = A.face(m, 0, j - 1).apply(*f);
        }
        if (j == 0 && z.size() == 1) {
            rep.ladder.push_back(z[0]);
            if (z[0] != 0) rep.closed_valuation = valuation(z[0], p).value;
        }
    }

    if (W >= 1) {
        HomotopyGroupsReport prev;
        OmegaModel B(p, W - 1);
        std::vector<IntMatrix> f2, c2;
        for (int m = 0; m <= top; ++m) {
            std::size_t n = B.dim(m, k);
            f2.push_back(IntMatrix::identity(n));
            IntMatrix dk = clear_row_denominators(B.differential(m, k));
            c2.push_back(dk.rows() == 0 || n == 0 ? IntMatrix::identity(n) : kernel_basis(dk));
        }
        auto a = detail::homotopy(detail::normalized_chains(B, k, f2), p);
        auto b = detail::homotopy(detail::normalized_chains(B, k, c2), p);
        for (int i = 0; i <= k; ++i)
            if (!same_invariants(a[static_cast<std::size_t>(i)], rep.pi_omega[static_cast<std::size_t>(i)]) ||
                !same_invariants(b[static_cast<std::size_t>(i)], rep.pi_closed[static_cast<std::size_t>(i)]))
                rep.stable = false;
        if (!rep.stable) rep.notes.push_back("weight " + std::to_string(W) + " and " + std::to_string(W - 1) + " disagree");
    }
    return rep;
}

// ---- A_PL over F_p ----------------------------------------------------------

/// Polynomial forms t^a dt_S on the chart t_1..t_n of Δ^n over F_p, truncated
/// at weight |a| + |S| <= W, with d(t^k) = k t^{k-1} dt.
struct AplComplex {
    int n = 0, W = 0;
    long p = 2;
    std::vector<OmegaBasis> bases;  // monomials reused as ordinary monomials t^a dt_S
    CochainComplex complex;
};

inline AplComplex apl_mod_p(int n, long p, int W) {
    if (n < 0 || n > 2) throw ConfigError("apl_mod_p supports n in 0..2");
    if (W < 0 || W > 16) throw ConfigError("apl_mod_p weight must be in 0..16");
    require_prime(p);
    AplComplex A;
    A.n = n, A.W = W, A.p = p;
    std::vector<std::size_t> dims;
    for (int k = 0; k <= n; ++k) {
        A.bases.push_back(omega_basis(n, k, W));
        dims.push_back(A.bases.back().size());
    }
    A.complex = CochainComplex(RingTag::field(p), dims);
    for (int k = 0; k < n; ++k) {
        const OmegaBasis& src = A.bases[static_cast<std::size_t>(k)];
        const OmegaBasis& dst = A.bases[static_cast<std::size_t>(k) + 1];
        IntMatrix D(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const DividedMonomial& m = src.monomials[j];
            for (int i = 1; i <= n; ++i) {
                int e = m.a[static_cast<std::size_t>(i - 1)];
                if (e == 0 || m.has_dx(i)) continue;
                DividedMonomial t = m;
                t.a[static_cast<std::size_t>(i - 1)] -= 1;
                unsigned bit = 1u << (i - 1);
                t.dx |= bit;
                D(dst.index.at(t), j) = mod_floor(BigInt(e * wedge_sign(bit, m.dx)), BigInt(p));
            }
        }
        A.complex.d[static_cast<std::size_t>(k)] = D;
    }
    A.complex.check();
    return A;
}

/// Monomials predicted to represent a basis of H^k: in each variable either
/// a_i ≡ 0 (mod p) without dt_i, or a_i ≡ -1 (mod p) with dt_i.
inline std::vector<DividedMonomial> apl_predicted_classes(const AplComplex& A, int k) {
    std::vector<DividedMonomial> out;
    for (const auto& m : A.bases[static_cast<std::size_t>(k)].monomials) {
        bool ok = true;
        for (int i = 1; i <= A.n && ok; ++i) {
            int e = m.a[static_cast<std::size_t>(i - 1)];
            ok = m.has_dx(i) ? (e + 1) % A.p == 0 : e % A.p == 0;
        }
        if (ok) out.push_back(m);
    }
    return out;
}

/// The predicted monomials are cocycles whose classes form a basis of H^k.
inline bool apl_classes_match(const AplComplex& A, int k) {
    auto pred = apl_predicted_classes(A, k);
    AbelianGroupReport h = A.complex.cohomology(k);
    if (h.rank() != pred.size()) return false;
    const OmegaBasis& B = A.bases[static_cast<std::size_t>(k)];
    IntMatrix C(h.rank(), pred.size());
    for (std::size_t j = 0; j < pred.size(); ++j) {
        IntVec v(B.size(), BigInt(0));
        v[B.index.at(pred[j])] = 1;
        auto c = h.classify(v);
        if (!c) return false;
        for (std::size_t i = 0; i < c->size(); ++i) C(i, j) = (*c)[i];
    }
    BigInt det = determinant(C);
    return mod_floor(det, BigInt(A.p)) != 0;
}

// ---- contraction on Δ^1 over Q ---------------------------------------------

/// f(t) (degree 0) or f(t) dt (degree 1) on Δ^1, coefficients of t^0, t^1, ...
struct PolyForm {
    int degree = 0;
    RatVec c;
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        auto trimmed = [](RatVec v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        return (a.degree == b.degree || (trimmed(a.c).empty() && trimmed(b.c).empty())) && trimmed(a.c) == trimmed(b.c);
    }
};

inline PolyForm d_form(const PolyForm& f) {
    if (f.degree == 1) return PolyForm{2, {}};
    PolyForm g{1, {}};
    for (std::size_t k = 1; k < f.c.size(); ++k) g.c.push_back(f.c[k] * static_cast<long>(k));
    return g;
}

/// K(t^n dt) = t^{n+1}/(n+1); K vanishes on functions.
inline PolyForm contraction_K(const PolyForm& f) {
    if (f.degree != 1) return PolyForm{f.degree - 1, {}};
    PolyForm g{0, RatVec(f.c.size() + 1, Rational(0))};
    for (std::size_t n = 0; n < f.c.size(); ++n) g.c[n + 1] = f.c[n] / Rational(static_cast<long>(n + 1));
    return g;
}

/// dK + Kd = id - ev_0 on every monomial of weight <= W.
inline bool contraction_identity_holds(int W) {
    auto add = [](PolyForm a, const PolyForm& b) {
        if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), Rational(0));
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
        return a;
    };
    for (int deg = 0; deg <= 1; ++deg)
        for (int n = 0; n + deg <= W; ++n) {
            PolyForm f{deg, RatVec(static_cast<std::size_t>(n) + 1, Rational(0))};
            f.c[static_cast<std::size_t>(n)] = 1;
            PolyForm lhs = add(d_form(contraction_K(f)), contraction_K(d_form(f)));
            lhs.degree = deg;
            PolyForm rhs = f;
            if (deg == 0 && n == 0) rhs.c[0] = 0;
            if (!(lhs == rhs)) return false;
        }
    return true;
}

// ---- divided powers inside the tensor algebra ------------------------------

/// Words over a graded basis of rank r, with Koszul-signed shuffle product.
struct TensorAlgebra {
    int rank = 1;
    std::vector<int> parity;  // |v_i| mod 2
    using Word = std::vector<int>;
    using Element = std::map<Word, Rational>;

    static void add(Element& e, const Word& w, const Rational& c) {
        if (c == 0) return;
        Rational& s = e[w];
        s += c;
        if (s == 0) e.erase(w);
    }

    Element shuffle(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [u, cu] : x)
            for (const auto& [v, cv] : y) {
                std::size_t a = u.size(), b = v.size();
                // choose positions of u's letters among a + b slots
                std::vector<bool> take_u(a + b, false);
                std::fill(take_u.begin(), take_u.begin() + static_cast<long>(a), true);
                std::sort(take_u.begin(), take_u.end());
                do {
                    Word w;
                    std::size_t iu = 0, iv = 0;
                    int sign = 1, odd_v_before = 0;
                    for (std::size_t s = 0; s < a + b; ++s) {
                        if (take_u[s]) {
                            if (parity[static_cast<std::size_t>(u[iu])] && odd_v_before % 2) sign = -sign;
                            w.push_back(u[iu++]);
                        } else {
                            if (parity[static_cast<std::size_t>(v[iv])]) ++odd_v_before;
                            w.push_back(v[iv++]);
                        }
                    }
                    add(out, w, cu * cv * sign);
                } while (std::next_permutation(take_u.begin(), take_u.end()));
            }
        return out;
    }

    /// [v_i | ... | v_i] (k letters); [] for k = 0.
    static Element power_word(int i, int k) {
        Element e;
        add(e, Word(static_cast<std::size_t>(k), i), 1);
        return e;
    }

    std::vector<Word> words(int m) const {
        std::vector<Word> out;
        Word w(static_cast<std::size_t>(m), 0);
        std::function<void(int)> rec = [&](int j) {
            if (j == m) {
                out.push_back(w);
                return;
            }
            for (int l = 0; l < rank; ++l) {
                w[static_cast<std::size_t>(j)] = l;
                rec(j + 1);
            }
        };
        rec(0);
        return out;
    }

    /// Rank of the S_m-invariants (Koszul signs) in T^m V.
    std::size_t invariant_rank(int m) const {
        auto ws = words(m);
        std::map<Word, std::size_t> idx;
        for (std::size_t i = 0; i < ws.size(); ++i) idx[ws[i]] = i;
        std::vector<RatVec> rows;
        for (int s = 0; s + 1 < m; ++s)
            for (const auto& w : ws) {
                Word t = w;
                std::swap(t[static_cast<std::size_t>(s)], t[static_cast<std::size_t>(s) + 1]);
                int sign = parity[static_cast<std::size_t>(w[static_cast<std::size_t>(s)])] &&
                                   parity[static_cast<std::size_t>(w[static_cast<std::size_t>(s) + 1])]
                               ? -1
                               : 1;
                // (τx)[t] = sign·x[w]; invariance: x[t]·1 - sign·x[w] = 0
                RatVec row(ws.size(), Rational(0));
                row[idx[t]] += 1;
                row[idx[w]] -= sign;
                rows.push_back(row);
            }
        if (rows.empty()) return ws.size();
        IntMatrix E = clear_row_denominators(RatMatrix::from_rows(ws.size(), rows));
        return ws.size() - smith_normal_form(E).rank;
    }

    bool is_invariant(const Element& e, int m) const {
        for (const auto& w : words(m)) {
            for (int s = 0; s + 1 < m; ++s) {
                Word t = w;
                std::swap(t[static_cast<std::size_t>(s)], t[static_cast<std::size_t>(s) + 1]);
                int sign = parity[static_cast<std::size_t>(w[static_cast<std::size_t>(s)])] &&
                                   parity[static_cast<std::size_t>(w[static_cast<std::size_t>(s) + 1])]
                               ? -1
                               : 1;
                auto get = [&](const Word& x) {
                    auto it = e.find(x);
                    return it == e.end() ? Rational(0) : it->second;
                };
                if (get(t) != get(w) * sign) return false;
            }
        }
        return true;
    }
};

struct GammaOracleReport {
    int L = 0;
    std::vector<std::string> failures;
    std::size_t checks = 0;
    bool passed() const { return failures.empty(); }
};

/// Compares the x^[n] model with shuffle-invariant tensors for |v| even and odd.
inline GammaOracleReport gamma_tensor_oracle(int L) {
    if (L < 1 || L > 4) throw ConfigError("word-length cap must be in 1..4");
    GammaOracleReport rep;
    rep.L = L;
    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };
    for (int odd = 0; odd <= 1; ++odd) {
        std::string par = odd ? "odd" : "even";
        TensorAlgebra T{2, {odd, odd}};
        // one generator: [v^a] ⊛ [v^b] against the divided-power rule
        for (int a = 0; a <= L; ++a)
            for (int b = 0; a + b <= L; ++b) {
                if (odd && (a > 1 || b > 1)) continue;
                ++rep.checks;
                auto prod = T.shuffle(TensorAlgebra::power_word(0, a), TensorAlgebra::power_word(0, b));
                TensorAlgebra::Element expect;
                if (!odd) {
                    TensorAlgebra::add(expect, TensorAlgebra::Word(static_cast<std::size_t>(a + b), 0),
                                       Rational(binomial(static_cast<unsigned long>(a + b), static_cast<unsigned long>(a))));
                } else if (a + b <= 1) {
                    TensorAlgebra::add(expect, TensorAlgebra::Word(static_cast<std::size_t>(a + b), 0), 1);
                }
                if (prod != expect)
                    fail(par + ": [v^" + std::to_string(a) + "] * [v^" + std::to_string(b) + "] mismatch");
            }
        // images of x^[a] y^[b] span the invariants and multiply by the divided-power rule
        auto image = [&](int a, int b) {
            return T.shuffle(TensorAlgebra::power_word(0, a), TensorAlgebra::power_word(1, b));
        };
        auto dp_coeff = [&](int a1, int b1, int a2, int b2) -> Rational {
            if (odd) {
                if (a1 + a2 > 1 || b1 + b2 > 1) return 0;
                return (b1 * a2) % 2 ? -1 : 1;
            }
            return Rational(binomial(static_cast<unsigned long>(a1 + a2), static_cast<unsigned long>(a1)) *
                            binomial(static_cast<unsigned long>(b1 + b2), static_cast<unsigned long>(b1)));
        };
        for (int m = 0; m <= L; ++m) {
            ++rep.checks;
            std::vector<RatVec> cols;
            auto ws = T.words(m);
            std::size_t expected_dim = 0;
            for (int a = 0; a <= m; ++a) {
                int b = m - a;
                if (odd && (a > 1 || b > 1)) continue;  // γ^a(v) = 0 for odd v and a >= 2
                ++expected_dim;
                auto e = image(a, b);
                if (!T.is_invariant(e, m)) fail(par + ": image of x^[" + std::to_string(a) + "]y^[" + std::to_string(b) + "] not invariant");
                RatVec v(ws.size(), Rational(0));
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    auto it = e.find(ws[i]);
                    if (it != e.end()) v[i] = it->second;
                }
                cols.push_back(v);
            }
            std::size_t inv = T.invariant_rank(m);
            std::size_t rk = cols.empty() ? 0 : smith_normal_form(clear_row_denominators(RatMatrix::from_columns(ws.size(), cols))).rank;
            if (inv != expected_dim || rk != expected_dim)
                fail(par + ": length " + std::to_string(m) + " invariants rank " + std::to_string(inv) +
                     ", images rank " + std::to_string(rk) + ", expected " + std::to_string(expected_dim));
        }
        if (odd)
            for (int a = 2; a <= L; ++a) {
                ++rep.checks;
                // [v|...|v] has no invariant part: the symmetrization vanishes
                TensorAlgebra::Element w = TensorAlgebra::power_word(0, 1);
                for (int j = 1; j < a; ++j) w = T.shuffle(w, TensorAlgebra::power_word(0, 1));
                if (!w.empty()) fail("odd: symmetrization of [v^" + std::to_string(a) + "] is nonzero");
            }
        for (int a1 = 0; a1 <= L; ++a1)
            for (int b1 = 0; a1 + b1 <= L; ++b1)
                for (int a2 = 0; a1 + b1 + a2 <= L; ++a2)
                    for (int b2 = 0; a1 + b1 + a2 + b2 <= L; ++b2) {
                        if (odd && (a1 > 1 || b1 > 1 || a2 > 1 || b2 > 1)) continue;
                        ++rep.checks;
                        auto lhs = T.shuffle(image(a1, b1), image(a2, b2));
                        Rational c = dp_coeff(a1, b1, a2, b2);
                        TensorAlgebra::Element rhs;
                        if (c != 0)
                            for (const auto& [w, x] : image(a1 + a2, b1 + b2)) TensorAlgebra::add(rhs, w, x * c);
                        if (lhs != rhs)
                            fail(par + ": product of images (" + std::to_string(a1) + "," + std::to_string(b1) + ")(" +
                                 std::to_string(a2) + "," + std::to_string(b2) + ") mismatch");
                    }
    }
    return rep;
}

}  // namespace padic
