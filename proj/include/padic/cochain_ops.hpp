#pragma once

// Cup and cup-i products on normalized simplicial cochains, Steenrod squares,
// the Hirsch formula, cohomology rings, and block composition of permutations.

#include "padic/simplicial.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace padic {

namespace detail {

inline void same_ring(const Cochain& a, const Cochain& b) {
    if (!(a.ring == b.ring)) throw std::invalid_argument("cochain ring mismatch: " + a.ring.name() + " vs " + b.ring.name());
}

inline void check_space(const SimplicialSet& X, const Cochain& a) {
    if (a.degree < 0 || a.values.size() != X.count(a.degree))
        throw std::invalid_argument("cochain does not live on this space");
}

/// Enumerates increasing cut sequences 0 <= j_0 < ... < j_i <= n.
template <class F>
void for_each_cut(int n, int i, F&& f) {
    std::vector<int> j(static_cast<std::size_t>(i + 1));
    std::iota(j.begin(), j.end(), 0);
    if (i > n) return;
    for (;;) {
        f(j);
        int k = i;
        while (k >= 0 && j[static_cast<std::size_t>(k)] == n - i + k) --k;
        if (k < 0) return;
        ++j[static_cast<std::size_t>(k)];
        for (int t = k + 1; t <= i; ++t) j[static_cast<std::size_t>(t)] = j[static_cast<std::size_t>(t - 1)] + 1;
    }
}

}  // namespace detail

/// a ∪_i b by Steenrod's interval-cut formula, normalized so that
///   δ(a∪_i b) = (-1)^i δa∪_i b + (-1)^{i+|a|} a∪_i δb + a∪_{i-1} b + (-1)^{i+|a||b|} b∪_{i-1} a.
/// For i = 0 this is the Alexander–Whitney cup product.
inline Cochain cup_i(const SimplicialSet& X, const Cochain& a, const Cochain& b, int i) {
    detail::same_ring(a, b);
    detail::check_space(X, a);
    detail::check_space(X, b);
    const int p = a.degree, q = b.degree;
    if (i < 0 || i > std::min(p, q)) throw std::invalid_argument("cup_i index out of range");
    const int n = p + q - i;
    Cochain out = zero_cochain(X, n, a.ring);
    if (n > X.dim()) return out;
    const int eps_exp = i * (i + 1) / 2 + i * (p + q);
    for (std::size_t k = 0; k < X.count(n); ++k) {
        SimplexRef s{n, k};
        BigInt total = 0;
        detail::for_each_cut(n, i, [&](const std::vector<int>& cuts) {
            // intervals I_0 .. I_{i+1}, consecutive ones sharing an endpoint
            std::vector<std::pair<int, int>> iv;
            int prev = 0;
            for (int c : cuts) {
                iv.emplace_back(prev, c);
                prev = c;
            }
            iv.emplace_back(prev, n);
            std::vector<int> av, bv;
            for (std::size_t t = 0; t < iv.size(); ++t)
                for (int v = iv[t].first; v <= iv[t].second; ++v) (t % 2 == 0 ? av : bv).push_back(v);
            if (static_cast<int>(av.size()) != p + 1 || static_cast<int>(bv.size()) != q + 1) return;
            long e = 0;
            for (std::size_t bi = 1; bi < iv.size(); bi += 2)
                for (std::size_t ai = bi + 1; ai < iv.size(); ai += 2)
                    e += static_cast<long>(iv[ai].second - iv[ai].first + 1) * (iv[bi].second - iv[bi].first + 1);
            BigInt va = evaluate(a, X.restrict_to(s, av));
            if (va == 0) return;
            BigInt vb = evaluate(b, X.restrict_to(s, bv));
            if (vb == 0) return;
            if (e % 2 == 0) total += va * vb;
            else total -= va * vb;
        });
        out.values[k] = eps_exp % 2 == 0 ? total : BigInt(-total);
    }
    if (a.ring.is_modular()) out.values = reduce_mod(out.values, a.ring.modulus());
    return out;
}

inline Cochain cup(const SimplicialSet& X, const Cochain& a, const Cochain& b) { return cup_i(X, a, b, 0); }

/// cup_i extended by zero to i > min(|a|, |b|).
inline Cochain cup_i_or_zero(const SimplicialSet& X, const Cochain& a, const Cochain& b, int i) {
    if (i > std::min(a.degree, b.degree)) return zero_cochain(X, a.degree + b.degree - i, a.ring);
    return cup_i(X, a, b, i);
}

inline Cochain add(const Cochain& a, const Cochain& b, const BigInt& fb = 1) {
    detail::same_ring(a, b);
    if (a.degree != b.degree || a.values.size() != b.values.size()) throw std::invalid_argument("cochain degree mismatch");
    Cochain c = a;
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] += fb * b.values[i];
    if (c.ring.is_modular()) c.values = reduce_mod(c.values, c.ring.modulus());
    return c;
}

inline Cochain scale(const Cochain& a, const BigInt& f) {
    Cochain c = a;
    for (auto& v : c.values) v *= f;
    if (c.ring.is_modular()) c.values = reduce_mod(c.values, c.ring.modulus());
    return c;
}

inline bool is_zero(const Cochain& a) {
    return is_zero_vec(a.ring.is_modular() ? reduce_mod(a.values, a.ring.modulus()) : a.values);
}

/// Residual of the cup-i coboundary formula; zero when the identity holds.
inline Cochain cup_i_coboundary_defect(const SimplicialSet& X, const Cochain& a, const Cochain& b, int i) {
    const int p = a.degree, q = b.degree;
    Cochain lhs = coboundary(X, cup_i(X, a, b, i));
    auto sgn = [](long e) { return BigInt(e % 2 == 0 ? 1 : -1); };
    Cochain rhs = zero_cochain(X, p + q - i + 1, a.ring);
    rhs = add(rhs, cup_i(X, coboundary(X, a), b, i), sgn(i));
    rhs = add(rhs, cup_i(X, a, coboundary(X, b), i), sgn(i + p));
    if (i > 0) {
        rhs = add(rhs, cup_i(X, a, b, i - 1));
        rhs = add(rhs, cup_i(X, b, a, i - 1), sgn(i + p * q));
    }
    return add(lhs, rhs, -1);
}

/// Residual of the Leibniz rule δ(a∪b) = δa∪b + (-1)^{|a|} a∪δb.
inline Cochain leibniz_defect(const SimplicialSet& X, const Cochain& a, const Cochain& b) {
    return cup_i_coboundary_defect(X, a, b, 0);
}

/// Sq^i of the class of the cocycle x over F_2: x ∪_{|x|-i} x.
inline Cochain steenrod_square(const SimplicialSet& X, const Cochain& x, int i) {
    if (!(x.ring == RingTag::field(2))) throw std::invalid_argument("Steenrod squares need F_2 coefficients");
    if (i < 0 || i > x.degree) throw std::invalid_argument("Sq^i index out of range");
    return cup_i(X, x, x, x.degree - i);
}

struct HirschResult {
    bool holds = true;
    std::optional<std::string> failing_simplex;
};

/// (a∪b)∪_1 c = (-1)^{|a|} a∪(b∪_1 c) + (-1)^{|b||c|} (a∪_1 c)∪b, checked on every simplex
/// (over F_2 this is the unsigned Hirsch formula).
inline HirschResult hirsch_check(const SimplicialSet& X, const Cochain& a, const Cochain& b, const Cochain& c) {
    HirschResult res;
    if (c.degree < 1) return res;
    Cochain lhs = cup_i_or_zero(X, cup(X, a, b), c, 1);
    Cochain r1 = cup(X, a, cup_i_or_zero(X, b, c, 1));
    Cochain r2 = cup(X, cup_i_or_zero(X, a, c, 1), b);
    Cochain rhs = add(scale(r1, a.degree % 2 == 0 ? 1 : -1), r2, (b.degree * c.degree) % 2 == 0 ? 1 : -1);
    Cochain diff = add(lhs, rhs, -1);
    for (std::size_t k = 0; k < diff.values.size(); ++k)
        if (diff.values[k] != 0) {
            res.holds = false;
            res.failing_simplex = X.name(SimplexRef{diff.degree, k});
            break;
        }
    return res;
}

// ---- cohomology ring --------------------------------------------------------

struct ProductEntry {
    int deg_a = 0;
    std::size_t gen_a = 0;
    int deg_b = 0;
    std::size_t gen_b = 0;
    IntVec coords;  // in the generators of degree deg_a + deg_b
};

struct CohomologyReport {
    RingTag ring;
    std::vector<AbelianGroupReport> degrees;
    std::vector<ProductEntry> products;
    std::vector<bool> stable;                // per degree; empty when not applicable
    std::vector<std::string> notes;
    std::vector<std::vector<std::string>> labels;  // per degree and generator; may be empty

    const ProductEntry* product(int da, std::size_t ga, int db, std::size_t gb) const {
        for (const auto& e : products)
            if (e.deg_a == da && e.gen_a == ga && e.deg_b == db && e.gen_b == gb) return &e;
        return nullptr;
    }
};

/// Per-degree groups with chosen generators plus all pairwise cup products.
inline CohomologyReport cohomology_ring(const SimplicialSet& X, const RingTag& ring, int max_degree = -1) {
    CochainComplex C = normalized_cochain_complex(X, ring);
    int top = max_degree < 0 ? X.dim() : std::min(max_degree, X.dim());
    CohomologyReport rep;
    rep.ring = ring;
    for (int q = 0; q <= top; ++q) rep.degrees.push_back(C.cohomology(q));
    for (int da = 0; da <= top; ++da)
        for (int db = 0; da + db <= top; ++db)
            for (std::size_t ga = 0; ga < rep.degrees[static_cast<std::size_t>(da)].rank(); ++ga)
                for (std::size_t gb = 0; gb < rep.degrees[static_cast<std::size_t>(db)].rank(); ++gb) {
                    Cochain a = make_cochain(X, da, ring, rep.degrees[static_cast<std::size_t>(da)].generators[ga]);
                    Cochain b = make_cochain(X, db, ring, rep.degrees[static_cast<std::size_t>(db)].generators[gb]);
                    Cochain ab = cup(X, a, b);
                    auto coords = rep.degrees[static_cast<std::size_t>(da + db)].classify(ab.values);
                    if (!coords) throw StructuralError("cup product of cocycles is not a cocycle");
                    rep.products.push_back(ProductEntry{da, ga, db, gb, *coords});
                }
    return rep;
}

// ---- block permutations --------------------------------------------------
// Permutations of {0..n-1} in one-line notation: element i is sent to position perm[i].

using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

/// (a∘b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different sizes");
    Permutation c(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

struct BlockPermutationInput {
    Permutation outer;               // permutation of the r blocks
    std::vector<Permutation> inner;  // permutation of each block's letters
};

/// σ_{n_1..n_r} ∘ (σ_1 × ... × σ_r): permute inside each block, then move
/// block k, keeping its internal order, to slot outer[k].
inline Permutation block_compose(const BlockPermutationInput& in) {
    const std::size_t r = in.outer.size();
    if (in.inner.size() != r) throw std::invalid_argument("block_compose: need one inner permutation per block");
    if (!is_permutation(in.outer)) throw std::invalid_argument("block_compose: outer is not a permutation");
    for (const auto& s : in.inner)
        if (!is_permutation(s)) throw std::invalid_argument("block_compose: inner entry is not a permutation");
    std::vector<std::size_t> sizes(r), slot_size(r), slot_offset(r, 0), block_offset(r, 0);
    for (std::size_t k = 0; k < r; ++k) {
        sizes[k] = in.inner[k].size();
        slot_size[static_cast<std::size_t>(in.outer[k])] = sizes[k];
    }
    for (std::size_t s = 1; s < r; ++s) slot_offset[s] = slot_offset[s - 1] + slot_size[s - 1];
    for (std::size_t k = 1; k < r; ++k) block_offset[k] = block_offset[k - 1] + sizes[k - 1];
    std::size_t total = r ? block_offset[r - 1] + sizes[r - 1] : 0;
    Permutation out(total);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < sizes[k]; ++j)
            out[block_offset[k] + j] =
                static_cast<int>(slot_offset[static_cast<std::size_t>(in.outer[k])]) + in.inner[k][j];
    return out;
}

}  // namespace padic
