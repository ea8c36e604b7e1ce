#pragma once

// Simplicial cochain algebras given level by level (A_n^q for the standard
// n-simplex) and their evaluation on a simplicial set, A(X) = sSet(X, A).

#include "padic/cochain_ops.hpp"
#include "padic/complex.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace padic {

/// A simplicial cochain algebra presented in coordinates.  Coordinates at each
/// (level, degree) are lattice coordinates: a vector is in the lattice iff its
/// entries are p-integral.  Face and degeneracy matrices act on columns.
class LevelModel {
public:
    explicit LevelModel(long p) : p_(p) { require_prime(p); }
    virtual ~LevelModel() = default;

    long prime() const { return p_; }
    virtual std::string name() const = 0;
    virtual std::size_t dim(int level, int degree) const = 0;
    virtual bool has_product() const { return false; }
    /// Product of a (degree da) and b (degree db) at one level.
    virtual RatVec product(int level, int da, const RatVec& a, int db, const RatVec& b) const {
        (void)level, (void)da, (void)a, (void)db, (void)b;
        throw std::logic_error(name() + " has no product");
    }

    /// d_i : A_level -> A_{level-1}.
    const RatMatrix& face(int level, int i, int degree) const { return cached('f', level, i, degree); }
    /// s_i : A_level -> A_{level+1}.
    const RatMatrix& degeneracy(int level, int i, int degree) const { return cached('s', level, i, degree); }
    /// d : A_level^degree -> A_level^{degree+1}.
    const RatMatrix& differential(int level, int degree) const { return cached('d', level, 0, degree); }

protected:
    virtual RatMatrix compute_face(int level, int i, int degree) const = 0;
    virtual RatMatrix compute_degeneracy(int level, int i, int degree) const = 0;
    virtual RatMatrix compute_differential(int level, int degree) const = 0;

private:
    const RatMatrix& cached(char kind, int level, int i, int degree) const {
        auto key = std::make_tuple(kind, level, i, degree);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return *it->second;
        }
        RatMatrix m = kind == 'f' ? compute_face(level, i, degree)
                      : kind == 's' ? compute_degeneracy(level, i, degree)
                                    : compute_differential(level, degree);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (valuation(m(r, c), p_) < Valuation::of(0))
                    throw StructuralError(name() + ": structure map leaves the lattice at level " + std::to_string(level));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = cache_.emplace(key, std::make_unique<RatMatrix>(std::move(m)));
        (void)fresh;
        return *it->second;
    }

    long p_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<char, int, int, int>, std::unique_ptr<RatMatrix>> cache_;
};

/// Composite degeneracy s_{w_0} ... s_{w_last} applied to a vector at `level`.
inline RatVec apply_degeneracies(const LevelModel& A, int level, const std::vector<int>& word, int degree, RatVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        v = A.degeneracy(level, *it, degree).apply(v);
        ++level;
    }
    return v;
}

inline RatMatrix degeneracy_matrix(const LevelModel& A, int level, const std::vector<int>& word, int degree) {
    RatMatrix M = RatMatrix::identity(A.dim(level, degree));
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        M = A.degeneracy(level, *it, degree) * M;
        ++level;
    }
    return M;
}

/// A(X) in degrees 0..top: a p-local integer cochain complex together with the
/// embedding of each degree into the product of A over the nondegenerate simplices.
struct ModelComplex {
    long prime = 2;
    std::vector<SimplexRef> cells;                     // nondegenerate simplices of X
    std::vector<std::vector<std::size_t>> offsets;     // [degree][cell]
    std::vector<std::size_t> ambient;                  // [degree]
    std::vector<IntMatrix> basis;                      // [degree]: columns span A^q(X)
    std::vector<std::shared_ptr<LinearSolver>> solvers;
    std::vector<BigInt> scalings;                      // unit cleared from each differential
    CochainComplex complex;

    int top() const { return complex.top(); }

    std::size_t cell_index(SimplexRef s) const {
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c] == s) return c;
        throw std::invalid_argument("not a nondegenerate simplex");
    }

    RatVec to_ambient(int q, const IntVec& coords) const {
        return to_rational(basis[static_cast<std::size_t>(q)].apply(coords));
    }

    /// Integer coordinates of an ambient vector, if it lies in A^q(X).
    std::optional<IntVec> coordinates(int q, const RatVec& v) const {
        for (const auto& x : v)
            if (x.get_den() != 1) return std::nullopt;
        IntVec iv(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) iv[i] = v[i].get_num();
        return solvers[static_cast<std::size_t>(q)]->solve_integer(iv);
    }

    RatVec component(int q, const RatVec& v, std::size_t cell, std::size_t len) const {
        std::size_t o = offsets[static_cast<std::size_t>(q)][cell];
        return RatVec(v.begin() + static_cast<long>(o), v.begin() + static_cast<long>(o + len));
    }
};

/// Face/degeneracy identities between levels n-1, n, n+1 in degrees 0..n+1.
inline bool model_simplicial_identities(const LevelModel& A, int n) {
    for (int k = 0; k <= n + 1; ++k) {
        for (int i = 0; n >= 2 && i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!(A.face(n - 1, i, k) * A.face(n, j, k) == A.face(n - 1, j - 1, k) * A.face(n, i, k))) return false;
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                if (!(A.degeneracy(n + 1, i, k) * A.degeneracy(n, j, k) ==
                      A.degeneracy(n + 1, j + 1, k) * A.degeneracy(n, i, k)))
                    return false;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                RatMatrix lhs = A.face(n + 1, i, k) * A.degeneracy(n, j, k);
                RatMatrix rhs;
                if (i == j || i == j + 1) rhs = RatMatrix::identity(A.dim(n, k));
                else if (i < j) rhs = A.degeneracy(n - 1, j - 1, k) * A.face(n, i, k);
                else rhs = A.degeneracy(n - 1, j, k) * A.face(n, i - 1, k);
                if (!(lhs == rhs)) return false;
            }
    }
    return true;
}

/// Evaluates a level model on X: tuples (phi_sigma) over nondegenerate simplices
/// with d_i phi_sigma = s_w phi_tau whenever d_i sigma = s_w tau.
inline ModelComplex evaluate_model(const LevelModel& A, const SimplicialSet& X, int top) {
    ModelComplex M;
    M.prime = A.prime();
    for (int n = 0; n <= X.dim(); ++n)
        for (std::size_t j = 0; j < X.count(n); ++j) M.cells.push_back(SimplexRef{n, j});

    std::vector<std::size_t> dims;
    for (int q = 0; q <= top; ++q) {
        std::vector<std::size_t> off;
        std::size_t total = 0;
        for (const auto& c : M.cells) {
            off.push_back(total);
            total += A.dim(c.dim, q);
        }
        M.offsets.push_back(off);
        M.ambient.push_back(total);

        std::vector<RatVec> rows;
        for (std::size_t ci = 0; ci < M.cells.size(); ++ci) {
            const SimplexRef& s = M.cells[ci];
            for (int i = 0; s.dim >= 1 && i <= s.dim; ++i) {
                const DegenerateImage& f = X.face_of(s, i);
                const RatMatrix& F = A.face(s.dim, i, q);
                RatMatrix S = degeneracy_matrix(A, f.base.dim, f.degeneracies, q);
                std::size_t tau = M.cell_index(f.base);
                for (std::size_t r = 0; r < F.rows(); ++r) {
                    RatVec row(total, Rational(0));
                    for (std::size_t c = 0; c < F.cols(); ++c) row[off[ci] + c] += F(r, c);
                    for (std::size_t c = 0; c < S.cols(); ++c) row[off[tau] + c] -= S(r, c);
                    bool nz = false;
                    for (const auto& x : row) nz = nz || x != 0;
                    if (nz) rows.push_back(std::move(row));
                }
            }
        }
        IntMatrix E = clear_row_denominators(RatMatrix::from_rows(total, rows));
        M.basis.push_back(rows.empty() ? IntMatrix::identity(total) : kernel_basis(E));
        M.solvers.push_back(std::make_shared<LinearSolver>(M.basis.back()));
        dims.push_back(M.basis.back().cols());
    }

    M.complex = CochainComplex(RingTag::integer(A.prime()), dims);
    for (int q = 0; q < top; ++q) {
        const IntMatrix& K = M.basis[static_cast<std::size_t>(q)];
        RatMatrix D(dims[static_cast<std::size_t>(q) + 1], K.cols());
        for (std::size_t j = 0; j < K.cols(); ++j) {
            RatVec x = to_rational(K.column(j));
            RatVec dx(M.ambient[static_cast<std::size_t>(q) + 1], Rational(0));
            for (std::size_t ci = 0; ci < M.cells.size(); ++ci) {
                int lv = M.cells[ci].dim;
                std::size_t n0 = A.dim(lv, q), n1 = A.dim(lv, q + 1);
                if (n0 == 0 || n1 == 0) continue;
                RatVec y = A.differential(lv, q).apply(M.component(q, x, ci, n0));
                for (std::size_t r = 0; r < n1; ++r) dx[M.offsets[static_cast<std::size_t>(q) + 1][ci] + r] = y[r];
            }
            auto c = M.solvers[static_cast<std::size_t>(q) + 1]->solve_plocal(dx, A.prime());
            if (!c) throw StructuralError(A.name() + ": differential leaves A(X) in degree " + std::to_string(q + 1));
            D.set_column(j, *c);
        }
        auto [Di, scale] = clear_denominators(D);
        M.complex.d[static_cast<std::size_t>(q)] = Di;
        M.scalings.push_back(scale);
    }
    M.complex.check();
    return M;
}

/// Componentwise product of two elements of A(X) (ambient vectors).
inline RatVec model_product(const LevelModel& A, const ModelComplex& M, int da, const RatVec& a, int db, const RatVec& b) {
    int q = da + db;
    if (q > M.top()) throw std::invalid_argument("product degree beyond the computed range");
    RatVec out(M.ambient[static_cast<std::size_t>(q)], Rational(0));
    for (std::size_t ci = 0; ci < M.cells.size(); ++ci) {
        int lv = M.cells[ci].dim;
        std::size_t nq = A.dim(lv, q);
        if (nq == 0) continue;
        RatVec y = A.product(lv, da, M.component(da, a, ci, A.dim(lv, da)), db, M.component(db, b, ci, A.dim(lv, db)));
        for (std::size_t r = 0; r < nq; ++r) out[M.offsets[static_cast<std::size_t>(q)][ci] + r] = y[r];
    }
    return out;
}

/// Cohomology of A(X) in degrees 0..q_max with products of generators.
inline CohomologyReport model_cohomology(const LevelModel& A, const ModelComplex& M, int q_max) {
    CohomologyReport rep;
    rep.ring = M.complex.ring;
    for (int q = 0; q <= q_max; ++q) rep.degrees.push_back(M.complex.cohomology(q));
    if (!A.has_product()) return rep;
    for (int da = 0; da <= q_max; ++da)
        for (int db = 0; da + db <= q_max; ++db)
            for (std::size_t ga = 0; ga < rep.degrees[static_cast<std::size_t>(da)].rank(); ++ga)
                for (std::size_t gb = 0; gb < rep.degrees[static_cast<std::size_t>(db)].rank(); ++gb) {
                    RatVec a = M.to_ambient(da, rep.degrees[static_cast<std::size_t>(da)].generators[ga]);
                    RatVec b = M.to_ambient(db, rep.degrees[static_cast<std::size_t>(db)].generators[gb]);
                    auto c = M.coordinates(da + db, model_product(A, M, da, a, db, b));
                    if (!c) throw StructuralError(A.name() + ": product leaves A(X)");
                    auto cls = rep.degrees[static_cast<std::size_t>(da + db)].classify(*c);
                    if (!cls) throw StructuralError(A.name() + ": product of cocycles is not a cocycle");
                    rep.products.push_back(ProductEntry{da, ga, db, gb, *cls});
                }
    return rep;
}

/// Same invariants (free rank and p-primary torsion) in every degree.
inline bool same_invariants(const AbelianGroupReport& a, const AbelianGroupReport& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

}  // namespace padic
