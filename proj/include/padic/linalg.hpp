#pragma once

// Exact linear algebra over Z, Z/p^k and Z_(p): Smith and Hermite normal
// forms, kernels, solving, lattice membership, cohomology of a complex.

#include "padic/arith.hpp"
#include "padic/matrix.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace padic {

/// U·M·V = D with U, V unimodular and d_0 | d_1 | ... on the diagonal.
struct SmithForm {
    IntMatrix U;
    IntMatrix Uinv;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;

    BigInt diag(std::size_t i) const { return D(i, i); }
    std::vector<BigInt> invariant_factors() const {
        std::vector<BigInt> out;
        for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
        return out;
    }
};

namespace detail {

inline BigInt tdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline bool divides(const BigInt& d, const BigInt& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

struct SmithWork {
    IntMatrix A, U, Uinv, V;

    void row_add(std::size_t dst, std::size_t src, const BigInt& f) {
        A.add_row(dst, src, f);
        U.add_row(dst, src, f);
        Uinv.add_col(src, dst, -f);
    }
    void row_swap(std::size_t a, std::size_t b) {
        A.swap_rows(a, b);
        U.swap_rows(a, b);
        Uinv.swap_cols(a, b);
    }
    void row_negate(std::size_t r) {
        A.negate_row(r);
        U.negate_row(r);
        Uinv.negate_col(r);
    }
    void col_add(std::size_t dst, std::size_t src, const BigInt& f) {
        A.add_col(dst, src, f);
        V.add_col(dst, src, f);
    }
    void col_swap(std::size_t a, std::size_t b) {
        A.swap_cols(a, b);
        V.swap_cols(a, b);
    }
};

}  // namespace detail

/// Smith normal form with minimal-absolute-value pivoting.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    detail::SmithWork w{M, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
    IntMatrix& A = w.A;
    std::size_t t = 0;
    const std::size_t lim = std::min(m, n);
    for (; t < lim; ++t) {
        // global minimal pivot of the trailing block
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (A(i, j) != 0 && (bi == m || detail::cmpabs(A(i, j), A(bi, bj)) < 0)) {
                    bi = i;
                    bj = j;
                }
        if (bi == m) break;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                w.row_add(i, t, -detail::tdiv(A(i, t), A(t, t)));
                if (A(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                w.col_add(j, t, -detail::tdiv(A(t, j), A(t, t)));
                if (A(t, j) != 0) dirty = true;
            }
            if (dirty) {
                std::size_t pi = t, pj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (A(i, t) != 0 && detail::cmpabs(A(i, t), A(pi, pj)) < 0) { pi = i; pj = t; }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A(t, j) != 0 && detail::cmpabs(A(t, j), A(pi, pj)) < 0) { pi = t; pj = j; }
                w.row_swap(t, pi);
                w.col_swap(t, pj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A(i, j) != 0 && !detail::divides(A(t, t), A(i, j))) {
                        w.row_add(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (A(t, t) < 0) w.row_negate(t);
    }
    return SmithForm{std::move(w.U), std::move(w.Uinv), std::move(w.A), std::move(w.V), t};
}

/// Sparse front end: returns (U, D, V) with D = U·M·V.
inline std::tuple<SparseIntMatrix, SparseIntMatrix, SparseIntMatrix> smith_normal_form(const SparseIntMatrix& M) {
    SmithForm s = smith_normal_form(M.to_dense());
    return {SparseIntMatrix::from_dense(s.U), SparseIntMatrix::from_dense(s.D), SparseIntMatrix::from_dense(s.V)};
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix A) {
    const std::size_t n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && A(s, k) == 0) ++s;
            if (s == n) return 0;
            A.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                A(i, j) = v;
            }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

/// Checks every documented property of a Smith form of M.
inline bool verify_smith(const IntMatrix& M, const SmithForm& s) {
    if (!(s.U * M * s.V == s.D)) return false;
    if (!(s.U * s.Uinv == IntMatrix::identity(M.rows()))) return false;
    if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j && s.D(i, j) != 0) return false;
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.D(i, i) <= 0) return false;
        if (i + 1 < s.rank && !detail::divides(s.D(i, i), s.D(i + 1, i + 1))) return false;
    }
    for (std::size_t i = s.rank; i < std::min(M.rows(), M.cols()); ++i)
        if (s.D(i, i) != 0) return false;
    return true;
}

/// Saturated kernel basis (as columns) of an integer matrix.
inline IntMatrix kernel_basis(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    return s.V.columns(s.rank, A.cols());
}

/// Z-basis (as columns) of the lattice spanned by the columns of G.
inline IntMatrix lattice_basis(const IntMatrix& G) {
    SmithForm s = smith_normal_form(G);
    IntMatrix B(G.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < G.rows(); ++i) B(i, j) = s.Uinv(i, j) * s.D(j, j);
    return B;
}

/// Solver for A·x = b with one Smith decomposition reused for many right-hand sides.
class LinearSolver {
public:
    explicit LinearSolver(IntMatrix A) : A_(std::move(A)), s_(smith_normal_form(A_)) {}

    const IntMatrix& matrix() const { return A_; }
    const SmithForm& smith() const { return s_; }
    std::size_t rank() const { return s_.rank; }

    /// Integer solution, if one exists.
    std::optional<IntVec> solve_integer(const IntVec& b) const {
        IntVec c = s_.U.apply(b);
        IntVec y(A_.cols(), BigInt(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < s_.rank) {
                if (!detail::divides(s_.D(i, i), c[i])) return std::nullopt;
                BigInt q;
                mpz_divexact(q.get_mpz_t(), c[i].get_mpz_t(), s_.D(i, i).get_mpz_t());
                y[i] = q;
            } else if (c[i] != 0) {
                return std::nullopt;
            }
        }
        return s_.V.apply(y);
    }

    /// Rational solution, if one exists.
    std::optional<RatVec> solve_rational(const RatVec& b) const {
        RatMatrix U = to_rational(s_.U);
        RatVec c = U.apply(b);
        RatVec y(A_.cols(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < s_.rank) y[i] = c[i] / Rational(s_.D(i, i));
            else if (c[i] != 0) return std::nullopt;
        }
        return to_rational(s_.V).apply(y);
    }

    /// Solution with p-integral rational entries, if one exists.
    std::optional<RatVec> solve_plocal(const RatVec& b, long p) const {
        RatMatrix U = to_rational(s_.U);
        RatVec c = U.apply(b);
        RatVec y(A_.cols(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < s_.rank) {
                y[i] = c[i] / Rational(s_.D(i, i));
                if (valuation(y[i], p) < Valuation::of(0)) return std::nullopt;
            } else if (c[i] != 0) {
                return std::nullopt;
            }
        }
        return to_rational(s_.V).apply(y);
    }

private:
    IntMatrix A_;
    SmithForm s_;
};

inline IntVec reduce_mod(IntVec v, const BigInt& m) {
    for (auto& x : v) x = mod_floor(x, m);
    return v;
}

inline bool is_zero_vec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

inline bool is_zero_vec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Solves A·x ≡ b (mod m); returns x reduced into [0, m).
inline std::optional<IntVec> solve_mod(const IntMatrix& A, const IntVec& b, const BigInt& m) {
    IntMatrix aug = IntMatrix::hstack(A, IntMatrix::identity(A.rows()).scaled(m));
    LinearSolver s(aug);
    auto x = s.solve_integer(b);
    if (!x) return std::nullopt;
    x->resize(A.cols());
    return reduce_mod(*x, m);
}

/// Row-style Hermite normal form of the lattice spanned by the rows of G.
inline IntMatrix hermite_normal_form(IntMatrix A) {
    const std::size_t m = A.rows(), n = A.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (A(i, c) != 0 && (best == m || detail::cmpabs(A(i, c), A(best, c)) < 0)) best = i;
            if (best == m) break;
            A.swap_rows(r, best);
            bool rest = false;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (A(i, c) == 0) continue;
                A.add_row(i, r, -detail::fdiv(A(i, c), A(r, c)));
                if (A(i, c) != 0) rest = true;
            }
            if (!rest) break;
        }
        if (A(r, c) == 0) continue;
        if (A(r, c) < 0) A.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) A.add_row(i, r, -detail::fdiv(A(i, c), A(r, c)));
        ++r;
    }
    return A.rows_range(0, r);
}

/// Outcome of a p-local membership query; exactly one of the two parts is set.
struct MembershipResult {
    std::optional<RatVec> coefficients;  // p-integral c with Σ c_i g_i = target
    std::optional<RatVec> certificate;   // λ with λ·g_i ∈ Z_(p) for all i and λ·target ∉ Z_(p)
};

/// Decides whether target lies in the Z_(p)-span of the generators.
inline MembershipResult lattice_membership_certified(const RatVec& target, const std::vector<RatVec>& generators,
                                                     long p) {
    require_prime(p);
    const std::size_t dim = target.size();
    RatMatrix G(dim, generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) {
        if (generators[j].size() != dim) throw std::invalid_argument("generator dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i) G(i, j) = generators[j][i];
    }
    RatMatrix T(dim, 1);
    for (std::size_t i = 0; i < dim; ++i) T(i, 0) = target[i];
    auto [Gi, L] = clear_denominators(RatMatrix::hstack(G, T));
    IntMatrix Gint = Gi.columns(0, generators.size());
    IntVec t = Gi.column(generators.size());

    SmithForm s = smith_normal_form(Gint);
    IntVec c = s.U.apply(t);
    MembershipResult res;
    RatVec y(generators.size(), Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
        Rational lam_scale;
        bool fail = false;
        if (i < s.rank) {
            y[i] = Rational(c[i]) / Rational(s.D(i, i));
            y[i].canonicalize();
            if (valuation(y[i], p) < Valuation::of(0)) {
                fail = true;
                lam_scale = Rational(1) / Rational(s.D(i, i));
            }
        } else if (c[i] != 0) {
            fail = true;
            lam_scale = Rational(1) / Rational(pow_int(p, static_cast<unsigned long>(vp(c[i], p) + 1)));
        }
        if (fail) {
            RatVec lam(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                lam[j] = Rational(s.U(i, j)) * lam_scale * Rational(L);
                lam[j].canonicalize();
            }
            res.certificate = lam;
            return res;
        }
    }
    res.coefficients = to_rational(s.V).apply(y);
    for (auto& x : *res.coefficients) x.canonicalize();
    return res;
}

inline std::optional<RatVec> lattice_membership(const RatVec& target, const std::vector<RatVec>& generators, long p) {
    return lattice_membership_certified(target, generators, p).coefficients;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Echelon basis of a finitely generated Z_(p)-submodule of Q^n.  Pivots are
/// normalized to powers of p; all row operations have p-integral coefficients.
class PLocalLattice {
public:
    PLocalLattice(std::size_t dim, long p) : dim_(dim), p_(p) { require_prime(p); }

    std::size_t dim() const { return dim_; }
    long prime() const { return p_; }
    std::size_t rank() const { return rows_.size(); }

    /// Adds a generator; returns true if the lattice grew.
    bool insert(RatVec v) {
        check(v);
        bool grew = false;
        for (;;) {
            std::size_t c = leading(v);
            if (c == dim_) return grew;
            auto it = rows_.find(c);
            if (it == rows_.end()) {
                normalize(v, c);
                rows_.emplace(c, std::move(v));
                return true;
            }
            RatVec& r = it->second;
            long ev = valuation(v[c], p_).value;
            long er = valuation(r[c], p_).value;
            if (ev >= er) {
                axpy(v, -v[c] / r[c], r);
            } else {
                normalize(v, c);
                std::swap(v, r);
                axpy(v, -v[c] / r[c], r);
                grew = true;
            }
        }
    }

    /// p-integral coefficients of v in terms of basis(), if v is in the lattice.
    std::optional<RatVec> coordinates(RatVec v) const {
        check(v);
        std::vector<std::size_t> order;
        for (const auto& kv : rows_) order.push_back(kv.first);
        RatVec coeff(order.size(), Rational(0));
        for (;;) {
            std::size_t c = leading(v);
            if (c == dim_) return coeff;
            auto it = rows_.find(c);
            if (it == rows_.end()) return std::nullopt;
            const RatVec& r = it->second;
            Rational f = v[c] / r[c];
            if (valuation(f, p_) < Valuation::of(0)) return std::nullopt;
            axpy(v, -f, r);
            std::size_t idx = static_cast<std::size_t>(std::distance(rows_.begin(), it));
            coeff[idx] += f;
        }
    }

    bool contains(const RatVec& v) const { return coordinates(v).has_value(); }

    /// Basis vectors ordered by pivot column.
    std::vector<RatVec> basis() const {
        std::vector<RatVec> out;
        for (const auto& kv : rows_) out.push_back(kv.second);
        return out;
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (const auto& kv : rows_) out.push_back(kv.first);
        return out;
    }

    bool contains_lattice(const PLocalLattice& o) const {
        for (const auto& kv : o.rows_)
            if (!contains(kv.second)) return false;
        return true;
    }

    friend bool same_lattice(const PLocalLattice& a, const PLocalLattice& b) {
        return a.dim_ == b.dim_ && a.rank() == b.rank() && a.contains_lattice(b) && b.contains_lattice(a);
    }

private:
    void check(const RatVec& v) const {
        if (v.size() != dim_) throw std::invalid_argument("lattice vector dimension mismatch");
    }
    std::size_t leading(const RatVec& v) const {
        for (std::size_t i = 0; i < dim_; ++i)
            if (v[i] != 0) return i;
        return dim_;
    }
    void normalize(RatVec& v, std::size_t c) const {
        long e = valuation(v[c], p_).value;
        Rational target = e >= 0 ? Rational(pow_int(p_, static_cast<unsigned long>(e)))
                                 : Rational(1) / Rational(pow_int(p_, static_cast<unsigned long>(-e)));
        Rational unit = v[c] / target;
        for (std::size_t i = c; i < dim_; ++i)
            if (v[i] != 0) {
                v[i] /= unit;
                v[i].canonicalize();
            }
    }
    static void axpy(RatVec& v, const Rational& f, const RatVec& r) {
        if (f == 0) return;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (r[i] != 0) {
                v[i] += f * r[i];
                v[i].canonicalize();
            }
    }

    std::size_t dim_;
    long p_;
    std::map<std::size_t, RatVec> rows_;
};

/// Coefficient ring of a cochain computation: Z read p-locally, or Z/p^k.
struct RingTag {
    enum class Kind { Integer, Modular };
    Kind kind = Kind::Integer;
    long prime = 2;
    int exponent = 0;  // k for Z/p^k

    static RingTag integer(long p) { require_prime(p); return {Kind::Integer, p, 0}; }
    static RingTag modular(long p, int k) {
        require_prime(p);
        if (k < 1) throw ConfigError("modular exponent must be >= 1");
        return {Kind::Modular, p, k};
    }
    static RingTag field(long p) { return modular(p, 1); }

    bool is_modular() const { return kind == Kind::Modular; }
    BigInt modulus() const { return is_modular() ? pow_int(prime, static_cast<unsigned long>(exponent)) : BigInt(0); }
    std::string name() const {
        if (!is_modular()) return "Z_(" + std::to_string(prime) + ")";
        if (exponent == 1) return "F_" + std::to_string(prime);
        return "Z/" + std::to_string(prime) + "^" + std::to_string(exponent);
    }
    friend bool operator==(const RingTag& a, const RingTag& b) {
        return a.kind == b.kind && a.prime == b.prime && a.exponent == b.exponent;
    }
};

/// One cohomology group with chosen generators and a classifier for cocycles.
/// Generators come free part first (order 0), then p-power torsion.  Over
/// Z/p^k "free" means a summand isomorphic to the whole coefficient ring.
struct AbelianGroupReport {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;
    std::vector<IntVec> generators;
    std::vector<BigInt> orders;               // 0 for free generators over Z, p^k over Z/p^k
    std::vector<BigInt> prime_to_p_torsion;   // diagnostics: discarded by p-localization

    // classification data
    RingTag ring;
    std::size_t ambient = 0;
    IntMatrix cocycle_check;                  // d_q
    std::shared_ptr<LinearSolver> cocycles;   // basis of Z as columns
    IntMatrix coord_change;                   // U of the subquotient Smith form
    std::vector<std::size_t> slots;           // row of coord_change for each generator
    std::vector<BigInt> unit_inverse;         // inverse of the prime-to-p cofactor (torsion only)

    std::size_t rank() const { return generators.size(); }
    bool is_trivial() const { return generators.empty(); }

    /// Coordinates of the class of x against `generators`; torsion coordinates
    /// are reduced modulo their order.  nullopt if x is not a cocycle.
    std::optional<IntVec> classify(const IntVec& x) const {
        if (x.size() != ambient) throw std::invalid_argument("cochain length mismatch in classify");
        IntVec dx = cocycle_check.apply(x);
        if (ring.is_modular()) dx = reduce_mod(dx, ring.modulus());
        if (!is_zero_vec(dx)) return std::nullopt;
        if (generators.empty()) return IntVec{};
        auto w = cocycles->solve_integer(x);
        if (!w) throw StructuralError("cocycle outside the computed cocycle lattice");
        IntVec c = coord_change.apply(*w);
        IntVec out(generators.size());
        for (std::size_t g = 0; g < generators.size(); ++g) {
            BigInt v = c[slots[g]];
            if (orders[g] != 0) v = mod_floor(BigInt(v * unit_inverse[g]), orders[g]);
            out[g] = v;
        }
        return out;
    }

    /// True iff x is a cocycle representing the zero class.
    bool is_zero_class(const IntVec& x) const {
        auto c = classify(x);
        return c && is_zero_vec(*c);
    }
};

namespace detail {

inline void check_composable(const IntMatrix& d_prev, const IntMatrix& d_next, const RingTag& ring, int degree) {
    if (d_prev.rows() != d_next.cols())
        throw std::invalid_argument("non-composable differentials in degree " + std::to_string(degree) + ": " +
                                    d_prev.shape() + " then " + d_next.shape());
    IntMatrix dd = d_next * d_prev;
    if (ring.is_modular()) {
        BigInt m = ring.modulus();
        for (std::size_t i = 0; i < dd.rows(); ++i)
            for (std::size_t j = 0; j < dd.cols(); ++j) dd(i, j) = mod_floor(dd(i, j), m);
    }
    if (!dd.is_zero()) throw StructuralError("d∘d != 0 at degree " + std::to_string(degree));
}

}  // namespace detail

/// ker(d_q)/im(d_{q-1}) read p-locally (Integer) or with Z/p^k coefficients.
inline AbelianGroupReport cohomology(const IntMatrix& d_prev, const IntMatrix& d_next, const RingTag& ring,
                                     int degree = -1) {
    detail::check_composable(d_prev, d_next, ring, degree);
    const std::size_t n = d_prev.rows();
    const long p = ring.prime;
    AbelianGroupReport rep;
    rep.ring = ring;
    rep.ambient = n;
    rep.cocycle_check = d_next;

    IntMatrix Z, B;
    if (ring.is_modular()) {
        BigInt m = ring.modulus();
        IntMatrix K = kernel_basis(IntMatrix::hstack(d_next, IntMatrix::identity(d_next.rows()).scaled(m)));
        Z = lattice_basis(K.rows_range(0, n));
        B = IntMatrix::hstack(d_prev, IntMatrix::identity(n).scaled(m));
    } else {
        Z = d_next.rows() == 0 ? IntMatrix::identity(n) : kernel_basis(d_next);
        B = d_prev;
    }
    rep.cocycles = std::make_shared<LinearSolver>(Z);
    if (Z.cols() == 0) return rep;

    IntMatrix C(Z.cols(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
        auto x = rep.cocycles->solve_integer(B.column(j));
        if (!x) throw StructuralError("coboundary is not a cocycle at degree " + std::to_string(degree));
        C.set_column(j, *x);
    }
    SmithForm s = smith_normal_form(C);
    IntMatrix Znew = Z * s.Uinv;
    rep.coord_change = s.U;
    const BigInt m = ring.is_modular() ? ring.modulus() : BigInt(0);

    auto push = [&](std::size_t slot, const BigInt& order, const BigInt& unit) {
        IntVec g = Znew.column(slot);
        for (auto& x : g) x *= unit;
        if (ring.is_modular()) g = reduce_mod(g, m);
        rep.generators.push_back(g);
        rep.orders.push_back(order);
        rep.slots.push_back(slot);
        rep.unit_inverse.push_back(order == 0 ? BigInt(1) : inverse_mod(mod_floor(unit, order), order));
    };

    // free part first
    for (std::size_t i = 0; i < Z.cols(); ++i) {
        bool is_free = ring.is_modular() ? (i < s.rank && s.D(i, i) == m) : (i >= s.rank);
        if (is_free) {
            push(i, ring.is_modular() ? m : BigInt(0), 1);
            ++rep.free_rank;
        }
    }
    for (std::size_t i = 0; i < s.rank; ++i) {
        BigInt d = s.D(i, i);
        if (d == 1 || (ring.is_modular() && d == m)) continue;
        BigInt u = d;
        long a = strip_p(u, p);
        if (u != 1) rep.prime_to_p_torsion.push_back(u);
        if (a == 0) continue;
        BigInt order = pow_int(p, static_cast<unsigned long>(a));
        push(i, order, u);
        rep.torsion.push_back(order);
    }
    return rep;
}

inline AbelianGroupReport cohomology(const SparseIntMatrix& d_prev, const SparseIntMatrix& d_next,
                                     const RingTag& ring, int degree = -1) {
    return cohomology(d_prev.to_dense(), d_next.to_dense(), ring, degree);
}

}  // namespace padic
