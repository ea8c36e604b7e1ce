#pragma once

// p-shifted cochains D*(X), the variant V*(X), the décalage η_p of a free
// complex, and levelwise tensor products of simplicial cochain algebras.

#include "padic/derham.hpp"
#include "padic/level_model.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace padic {

/// A degreewise sublattice L^q ⊆ C^q of a free complex, closed under d, with
/// the induced differential written in a Z-basis of each L^q.
struct ShiftedComplex {
    long prime = 2;
    std::string rule;
    CochainComplex base;
    std::vector<IntMatrix> basis;  // [q]: columns are a Z-basis of L^q in C^q coordinates
    std::vector<std::shared_ptr<LinearSolver>> solvers;
    CochainComplex complex;        // induced differential in lattice coordinates

    int top() const { return base.top(); }

    std::optional<IntVec> coordinates(int q, const IntVec& x) const {
        return solvers.at(static_cast<std::size_t>(q))->solve_integer(x);
    }
    bool contains(int q, const IntVec& x) const { return coordinates(q, x).has_value(); }

    /// Row Hermite normal form of L^q; equal HNFs mean equal lattices.
    IntMatrix hnf(int q) const { return hermite_normal_form(basis.at(static_cast<std::size_t>(q)).transpose()); }

    AbelianGroupReport cohomology(int q) const { return complex.cohomology(q); }
};

namespace detail {

inline ShiftedComplex induced_complex(const CochainComplex& C, long p, std::string rule, std::vector<IntMatrix> bases) {
    ShiftedComplex S;
    S.prime = p;
    S.rule = std::move(rule);
    S.base = C;
    S.basis = std::move(bases);
    std::vector<std::size_t> dims;
    for (const auto& B : S.basis) {
        S.solvers.push_back(std::make_shared<LinearSolver>(B));
        dims.push_back(B.cols());
    }
    S.complex = CochainComplex(RingTag::integer(p), dims);
    for (int q = 0; q < C.top(); ++q) {
        const IntMatrix& B = S.basis[static_cast<std::size_t>(q)];
        IntMatrix& D = S.complex.d[static_cast<std::size_t>(q)];
        for (std::size_t j = 0; j < B.cols(); ++j) {
            auto c = S.coordinates(q + 1, C.d_out(q).apply(B.column(j)));
            if (!c) throw StructuralError(S.rule + ": differential leaves the lattice in degree " + std::to_string(q + 1));
            D.set_column(j, *c);
        }
    }
    S.complex.check();
    return S;
}

/// Basis of p^a·Z^q + p^b·C^q (a <= b) from a unimodular basis adapted to the cocycles.
inline IntMatrix shifted_basis(const IntMatrix& d, std::size_t n, long p, long a, long b) {
    if (a > b) throw std::invalid_argument("cocycle exponent exceeds the general exponent");
    BigInt pa = pow_int(p, static_cast<unsigned long>(a)), pb = pow_int(p, static_cast<unsigned long>(b));
    if (d.rows() == 0) return IntMatrix::identity(n).scaled(pa);
    SmithForm s = smith_normal_form(d);
    IntMatrix B = s.V;
    for (std::size_t j = 0; j < n; ++j) {
        const BigInt& f = j < s.rank ? pb : pa;
        for (std::size_t i = 0; i < n; ++i) B(i, j) *= f;
    }
    return B;
}

}  // namespace detail

/// Exponent rule: degree q, cocycle or not -> power of p on the generator.
using ShiftRule = std::function<long(int q, bool cocycle)>;

inline ShiftedComplex shifted_complex(const CochainComplex& C, long p, const std::string& rule, const ShiftRule& e) {
    require_prime(p);
    if (C.ring.is_modular()) throw ConfigError("shifted complexes need a free complex over Z");
    std::vector<IntMatrix> bases;
    for (int q = 0; q <= C.top(); ++q)
        bases.push_back(detail::shifted_basis(C.d_out(q), C.dim(q), p, e(q, true), e(q, false)));
    return detail::induced_complex(C, p, rule, std::move(bases));
}

/// D^n = p^n·Z^n + p^{n+1}·C^n inside the normalized cochains of X.
inline ShiftedComplex build_D(const SimplicialSet& X, long p) {
    return shifted_complex(normalized_cochain_complex(X, RingTag::integer(p)), p, "D",
                           [](int q, bool z) { return z ? long(q) : long(q) + 1; });
}

/// V^0 = Z^0 + p·C^0 and V^n = p·C^n for n > 0.
inline ShiftedComplex build_V(const SimplicialSet& X, long p) {
    return shifted_complex(normalized_cochain_complex(X, RingTag::integer(p)), p, "V",
                           [](int q, bool z) { return q == 0 && z ? 0L : 1L; });
}

/// (η_p C)^n = {x ∈ p^n·C^n : dx ∈ p^{n+1}·C^{n+1}}.
inline ShiftedComplex eta_p(const CochainComplex& C, long p) {
    require_prime(p);
    if (C.ring.is_modular()) throw ConfigError("eta_p needs a free complex over Z");
    std::vector<IntMatrix> bases;
    for (int q = 0; q <= C.top(); ++q) {
        const std::size_t n = C.dim(q);
        IntMatrix d = C.d_out(q);
        IntMatrix L = IntMatrix::identity(n);
        if (d.rows() > 0 && n > 0) {
            IntMatrix K = kernel_basis(IntMatrix::hstack(d, IntMatrix::identity(d.rows()).scaled(BigInt(p))));
            L = lattice_basis(K.rows_range(0, n));
        }
        bases.push_back(L.scaled(pow_int(p, static_cast<unsigned long>(q))));
    }
    return detail::induced_complex(C, p, "eta_p", std::move(bases));
}

/// Lattice equality, degree by degree, of two shifted complexes on the same base.
inline bool same_sublattices(const ShiftedComplex& a, const ShiftedComplex& b) {
    if (a.top() != b.top()) return false;
    for (int q = 0; q <= a.top(); ++q)
        if (!(a.hnf(q) == b.hnf(q))) return false;
    return true;
}

/// First degree where the two lattices differ, if any.
inline std::optional<int> first_lattice_difference(const ShiftedComplex& a, const ShiftedComplex& b) {
    for (int q = 0; q <= std::min(a.top(), b.top()); ++q)
        if (!(a.hnf(q) == b.hnf(q))) return q;
    return std::nullopt;
}

/// Cup products of all pairs of basis elements re-expand in the lattice.
inline bool products_closed(const SimplicialSet& X, const ShiftedComplex& S) {
    const RingTag ring = RingTag::integer(S.prime);
    for (int i = 0; i <= S.top(); ++i)
        for (int j = 0; i + j <= S.top(); ++j) {
            const IntMatrix& A = S.basis[static_cast<std::size_t>(i)];
            const IntMatrix& B = S.basis[static_cast<std::size_t>(j)];
            for (std::size_t a = 0; a < A.cols(); ++a)
                for (std::size_t b = 0; b < B.cols(); ++b) {
                    Cochain ab = cup(X, make_cochain(X, i, ring, A.column(a)), make_cochain(X, j, ring, B.column(b)));
                    if (!S.contains(i + j, ab.values)) return false;
                }
        }
    return true;
}

/// Cohomology of a shifted complex in degrees 0..q_max.
inline CohomologyReport shifted_cohomology(const ShiftedComplex& S, int q_max) {
    CohomologyReport rep;
    rep.ring = S.complex.ring;
    for (int q = 0; q <= std::min(q_max, S.top()); ++q) rep.degrees.push_back(S.cohomology(q));
    return rep;
}

// ---- level models -----------------------------------------------------------

namespace detail {

/// Increasing k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> s(static_cast<std::size_t>(k));
    std::iota(s.begin(), s.end(), 0);
    for (;;) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return out;
        ++s[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t) s[static_cast<std::size_t>(t)] = s[static_cast<std::size_t>(t) - 1] + 1;
    }
}

inline std::size_t subset_index(const std::vector<std::vector<int>>& all, const std::vector<int>& s) {
    auto it = std::lower_bound(all.begin(), all.end(), s);
    if (it == all.end() || *it != s) throw std::logic_error("subset not found");
    return static_cast<std::size_t>(it - all.begin());
}

}  // namespace detail

/// Normalized cochains C*(Δ^n) on the nondegenerate simplices (vertex sets).
class CochainModel : public LevelModel {
public:
    explicit CochainModel(long p) : LevelModel(p) {}
    std::string name() const override { return "C"; }
    std::size_t dim(int level, int degree) const override {
        if (level < 0 || degree < 0 || degree > level) return 0;
        return binomial(static_cast<unsigned long>(level + 1), static_cast<unsigned long>(degree + 1)).get_ui();
    }
    bool has_product() const override { return true; }

    static std::vector<std::vector<int>> simplices(int level, int degree) { return detail::subsets(level + 1, degree + 1); }

    /// Alexander–Whitney: (a∪b)(v_0..v_{i+j}) = a(v_0..v_i)·b(v_i..v_{i+j}).
    RatVec product(int level, int da, const RatVec& a, int db, const RatVec& b) const override {
        RatVec out(dim(level, da + db), Rational(0));
        if (out.empty()) return out;
        auto S = simplices(level, da + db), A = simplices(level, da), B = simplices(level, db);
        for (std::size_t k = 0; k < S.size(); ++k) {
            std::vector<int> front(S[k].begin(), S[k].begin() + da + 1), back(S[k].begin() + da, S[k].end());
            out[k] = a[detail::subset_index(A, front)] * b[detail::subset_index(B, back)];
        }
        return out;
    }

protected:
    /// Pullback along a vertex map f : Δ^from -> Δ^level; simplices that f collapses contribute 0.
    RatMatrix pullback(int level, int from, int degree, const std::function<int(int)>& f) const {
        auto src = simplices(level, degree), dst = simplices(from, degree);
        RatMatrix M(dst.size(), src.size());
        for (std::size_t r = 0; r < dst.size(); ++r) {
            std::vector<int> img;
            for (int v : dst[r]) img.push_back(f(v));
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (img.size() != dst[r].size()) continue;
            M(r, detail::subset_index(src, img)) = 1;
        }
        return M;
    }
    RatMatrix compute_face(int level, int i, int degree) const override {
        return pullback(level, level - 1, degree, [i](int v) { return v < i ? v : v + 1; });
    }
    RatMatrix compute_degeneracy(int level, int i, int degree) const override {
        return pullback(level, level + 1, degree, [i](int v) { return v <= i ? v : v - 1; });
    }
    RatMatrix compute_differential(int level, int degree) const override {
        auto src = simplices(level, degree), dst = simplices(level, degree + 1);
        RatMatrix M(dst.size(), src.size());
        for (std::size_t r = 0; r < dst.size(); ++r)
            for (std::size_t j = 0; j < dst[r].size(); ++j) {
                std::vector<int> f = dst[r];
                f.erase(f.begin() + static_cast<long>(j));
                M(r, detail::subset_index(src, f)) += j % 2 == 0 ? 1 : -1;
            }
        return M;
    }
};

/// C*(Δ^n) with the lattice p^a·Z + p^b·C chosen by an exponent rule; V and D levelwise.
class ShiftedCochainModel : public LevelModel {
public:
    ShiftedCochainModel(long p, std::string name, ShiftRule rule)
        : LevelModel(p), name_(std::move(name)), rule_(std::move(rule)), base_(p) {}

    std::string name() const override { return name_; }
    std::size_t dim(int level, int degree) const override { return base_.dim(level, degree); }
    bool has_product() const override { return true; }

    /// Columns: the lattice basis in C*(Δ^level) coordinates.
    const IntMatrix& basis(int level, int degree) const { return entry(level, degree).basis; }

    RatVec product(int level, int da, const RatVec& a, int db, const RatVec& b) const override {
        RatVec ab = base_.product(level, da, lift(level, da, a), db, lift(level, db, b));
        return lower(level, da + db, ab);
    }

    RatVec lift(int level, int degree, const RatVec& v) const { return to_rational(basis(level, degree)).apply(v); }
    RatVec lower(int level, int degree, const RatVec& v) const {
        auto c = entry(level, degree).solver->solve_rational(v);
        if (!c) throw std::invalid_argument("vector outside C*(Δ^n)");
        return *c;
    }

protected:
    RatMatrix conjugate(const RatMatrix& M, int from_level, int to_level, int from_deg, int to_deg) const {
        RatMatrix out(dim(to_level, to_deg), dim(from_level, from_deg));
        for (std::size_t j = 0; j < out.cols(); ++j) {
            RatVec e(out.cols(), Rational(0));
            e[j] = 1;
            out.set_column(j, lower(to_level, to_deg, M.apply(lift(from_level, from_deg, e))));
        }
        return out;
    }
    RatMatrix compute_face(int level, int i, int degree) const override {
        return conjugate(base_.face(level, i, degree), level, level - 1, degree, degree);
    }
    RatMatrix compute_degeneracy(int level, int i, int degree) const override {
        return conjugate(base_.degeneracy(level, i, degree), level, level + 1, degree, degree);
    }
    RatMatrix compute_differential(int level, int degree) const override {
        return conjugate(base_.differential(level, degree), level, level, degree, degree + 1);
    }

private:
    struct Entry {
        IntMatrix basis;
        std::shared_ptr<LinearSolver> solver;
    };
    const Entry& entry(int level, int degree) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(level, degree);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
        const std::size_t n = base_.dim(level, degree);
        IntMatrix d = clear_denominators(base_.differential(level, degree)).first;
        IntMatrix B = detail::shifted_basis(d, n, prime(), rule_(degree, true), rule_(degree, false));
        auto solver = std::make_shared<LinearSolver>(B);
        return entries_.emplace(key, Entry{std::move(B), std::move(solver)}).first->second;
    }

    std::string name_;
    ShiftRule rule_;
    CochainModel base_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, Entry> entries_;
};

inline std::shared_ptr<ShiftedCochainModel> v_model(long p) {
    return std::make_shared<ShiftedCochainModel>(p, "V", [](int q, bool z) { return q == 0 && z ? 0L : 1L; });
}

inline std::shared_ptr<ShiftedCochainModel> d_model(long p) {
    return std::make_shared<ShiftedCochainModel>(p, "D", [](int q, bool z) { return z ? long(q) : long(q) + 1; });
}

/// The ground ring Z_(p) in degree 0 at every level.
class UnitModel : public LevelModel {
public:
    explicit UnitModel(long p) : LevelModel(p) {}
    std::string name() const override { return "unit"; }
    std::size_t dim(int level, int degree) const override { return level >= 0 && degree == 0 ? 1 : 0; }
    bool has_product() const override { return true; }
    RatVec product(int, int da, const RatVec& a, int db, const RatVec& b) const override {
        if (da != 0 || db != 0) return {};
        return {a[0] * b[0]};
    }

protected:
    RatMatrix compute_face(int level, int, int degree) const override {
        return identity_like(level - 1, level, degree);
    }
    RatMatrix compute_degeneracy(int level, int, int degree) const override {
        return identity_like(level + 1, level, degree);
    }
    RatMatrix compute_differential(int level, int degree) const override {
        return RatMatrix(dim(level, degree + 1), dim(level, degree));
    }

private:
    RatMatrix identity_like(int to, int from, int degree) const {
        RatMatrix M(dim(to, degree), dim(from, degree));
        if (M.rows() && M.cols()) M(0, 0) = 1;
        return M;
    }
};

/// (A⊗B)^k_n = ⊕_{i+j=k} A^i_n ⊗ B^j_n with d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db,
/// componentwise faces and degeneracies, and (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'.
/// Coordinates are ordered by the A-degree i, then A index, then B index.
class TensorModel : public LevelModel {
public:
    TensorModel(std::shared_ptr<const LevelModel> A, std::shared_ptr<const LevelModel> B)
        : LevelModel(A->prime()), A_(std::move(A)), B_(std::move(B)) {
        if (A_->prime() != B_->prime()) throw ConfigError("tensor factors use different primes");
    }

    std::string name() const override { return A_->name() + "⊗" + B_->name(); }
    std::size_t dim(int level, int degree) const override {
        std::size_t total = 0;
        for (int i = 0; i <= degree; ++i) total += A_->dim(level, i) * B_->dim(level, degree - i);
        return total;
    }
    bool has_product() const override { return A_->has_product() && B_->has_product(); }

    /// Offset of the block A^i ⊗ B^{degree-i}.
    std::size_t offset(int level, int degree, int i) const {
        std::size_t o = 0;
        for (int t = 0; t < i; ++t) o += A_->dim(level, t) * B_->dim(level, degree - t);
        return o;
    }

    /// Coordinates of a⊗b with a ∈ A^i, b ∈ B^{degree-i}.
    RatVec pure(int level, int i, const RatVec& a, int j, const RatVec& b) const {
        RatVec out(dim(level, i + j), Rational(0));
        std::size_t o = offset(level, i + j, i), nb = b.size();
        for (std::size_t s = 0; s < a.size(); ++s)
            for (std::size_t t = 0; t < nb; ++t) out[o + s * nb + t] = a[s] * b[t];
        return out;
    }

    RatVec product(int level, int da, const RatVec& x, int db, const RatVec& y) const override {
        RatVec out(dim(level, da + db), Rational(0));
        for (int i = 0; i <= da; ++i)
            for (int i2 = 0; i2 <= db; ++i2) {
                const int j = da - i, j2 = db - i2;
                const std::size_t na = A_->dim(level, i), nb = B_->dim(level, j);
                const std::size_t na2 = A_->dim(level, i2), nb2 = B_->dim(level, j2);
                if (!na || !nb || !na2 || !nb2) continue;
                if (A_->dim(level, i + i2) == 0 || B_->dim(level, j + j2) == 0) continue;
                const std::size_t o = offset(level, da, i), o2 = offset(level, db, i2);
                const Rational sign = (j * i2) % 2 == 0 ? 1 : -1;
                for (std::size_t s = 0; s < na; ++s)
                    for (std::size_t t = 0; t < nb; ++t) {
                        const Rational& c = x[o + s * nb + t];
                        if (c == 0) continue;
                        for (std::size_t s2 = 0; s2 < na2; ++s2)
                            for (std::size_t t2 = 0; t2 < nb2; ++t2) {
                                const Rational& c2 = y[o2 + s2 * nb2 + t2];
                                if (c2 == 0) continue;
                                RatVec aa = A_->product(level, i, unit(na, s), i2, unit(na2, s2));
                                RatVec bb = B_->product(level, j, unit(nb, t), j2, unit(nb2, t2));
                                RatVec term = pure(level, i + i2, aa, j + j2, bb);
                                Rational f = sign * c * c2;
                                for (std::size_t r = 0; r < out.size(); ++r) out[r] += f * term[r];
                            }
                    }
            }
        return out;
    }

protected:
    RatMatrix componentwise(int from_level, int to_level, int degree,
                            const std::function<RatMatrix(const LevelModel&, int)>& F) const {
        RatMatrix M(dim(to_level, degree), dim(from_level, degree));
        for (int i = 0; i <= degree; ++i) {
            const int j = degree - i;
            if (!A_->dim(from_level, i) || !B_->dim(from_level, j) || !A_->dim(to_level, i) || !B_->dim(to_level, j)) continue;
            kron_into(M, offset(to_level, degree, i), offset(from_level, degree, i), F(*A_, i), F(*B_, j));
        }
        return M;
    }
    RatMatrix compute_face(int level, int i, int degree) const override {
        return componentwise(level, level - 1, degree, [&](const LevelModel& m, int q) { return m.face(level, i, q); });
    }
    RatMatrix compute_degeneracy(int level, int i, int degree) const override {
        return componentwise(level, level + 1, degree, [&](const LevelModel& m, int q) { return m.degeneracy(level, i, q); });
    }
    RatMatrix compute_differential(int level, int degree) const override {
        RatMatrix M(dim(level, degree + 1), dim(level, degree));
        for (int i = 0; i <= degree; ++i) {
            const int j = degree - i;
            const std::size_t na = A_->dim(level, i), nb = B_->dim(level, j);
            if (!na || !nb) continue;
            const std::size_t src = offset(level, degree, i);
            if (A_->dim(level, i + 1))
                kron_into(M, offset(level, degree + 1, i + 1), src, A_->differential(level, i), RatMatrix::identity(nb));
            if (B_->dim(level, j + 1)) {
                RatMatrix dB = B_->differential(level, j);
                kron_into(M, offset(level, degree + 1, i), src, RatMatrix::identity(na), i % 2 == 0 ? dB : dB.scaled(-1));
            }
        }
        return M;
    }

private:
    static RatVec unit(std::size_t n, std::size_t k) {
        RatVec e(n, Rational(0));
        e[k] = 1;
        return e;
    }
    static void kron_into(RatMatrix& M, std::size_t row0, std::size_t col0, const RatMatrix& X, const RatMatrix& Y) {
        for (std::size_t a = 0; a < X.rows(); ++a)
            for (std::size_t b = 0; b < X.cols(); ++b) {
                if (X(a, b) == 0) continue;
                for (std::size_t c = 0; c < Y.rows(); ++c)
                    for (std::size_t e = 0; e < Y.cols(); ++e)
                        M(row0 + a * Y.rows() + c, col0 + b * Y.cols() + e) += X(a, b) * Y(c, e);
            }
    }

    std::shared_ptr<const LevelModel> A_, B_;
};

/// tensor_cochain_algebra(A, B) as a level model.
inline std::shared_ptr<TensorModel> tensor_cochain_algebra(std::shared_ptr<const LevelModel> A,
                                                           std::shared_ptr<const LevelModel> B) {
    return std::make_shared<TensorModel>(std::move(A), std::move(B));
}

inline std::shared_ptr<TensorModel> v_tensor_omega(long p, int W) {
    return tensor_cochain_algebra(v_model(p), std::make_shared<OmegaModel>(p, W));
}

/// d∘d = 0 on the level `level` of a model in degrees 0..max_degree.
inline bool model_dd_zero(const LevelModel& A, int level, int max_degree) {
    for (int q = 0; q + 1 <= max_degree; ++q) {
        if (!A.dim(level, q) || !A.dim(level, q + 2)) continue;
        if (!(A.differential(level, q + 1) * A.differential(level, q)).is_zero()) return false;
    }
    return true;
}

/// H*((V⊗Ω)(X)) at weight ≤ W in degrees 0..q_max, with stability against W-1.
inline CohomologyReport v_tensor_omega_cohomology(const SimplicialSet& X, int W, int q_max, long p) {
    auto T = v_tensor_omega(p, W);
    ModelComplex M = evaluate_model(*T, X, q_max + 1);
    CohomologyReport rep;
    rep.ring = M.complex.ring;
    for (int q = 0; q <= q_max; ++q) rep.degrees.push_back(M.complex.cohomology(q));
    if (W >= 1) {
        auto prev = v_tensor_omega(p, W - 1);
        ModelComplex Mp = evaluate_model(*prev, X, q_max + 1);
        for (int q = 0; q <= q_max; ++q) {
            bool same = same_invariants(rep.degrees[static_cast<std::size_t>(q)], Mp.complex.cohomology(q));
            rep.stable.push_back(same);
            if (!same)
                rep.notes.push_back("weight " + std::to_string(W) + " and " + std::to_string(W - 1) +
                                    " disagree in degree " + std::to_string(q) + "; result not yet stable");
        }
    }
    return rep;
}

}  // namespace padic
