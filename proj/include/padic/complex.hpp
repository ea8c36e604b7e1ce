#pragma once

// Finitely generated cochain complexes over Z (read p-locally) or Z/p^k.

#include "padic/linalg.hpp"

#include <string>
#include <vector>

namespace padic {

/// C^0 -> C^1 -> ... -> C^top with d[q] : C^q -> C^{q+1} (d[top] maps to 0).
struct CochainComplex {
    RingTag ring;
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> d;

    CochainComplex() = default;
    CochainComplex(RingTag r, std::vector<std::size_t> dimensions) : ring(r), dims(std::move(dimensions)) {
        for (std::size_t q = 0; q < dims.size(); ++q)
            d.emplace_back(q + 1 < dims.size() ? dims[q + 1] : 0, dims[q]);
    }

    int top() const { return static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int q) const { return q < 0 || q > top() ? 0 : dims[static_cast<std::size_t>(q)]; }

    /// Differential leaving degree q (a 0-row matrix at the top).
    IntMatrix d_out(int q) const {
        if (q < 0 || q > top()) return IntMatrix(dim(q + 1), dim(q));
        return d[static_cast<std::size_t>(q)];
    }
    /// Differential arriving in degree q.
    IntMatrix d_in(int q) const { return q <= 0 ? IntMatrix(dim(q), 0) : d_out(q - 1); }

    IntVec apply_d(int q, const IntVec& x) const {
        IntVec y = d_out(q).apply(x);
        return ring.is_modular() ? reduce_mod(y, ring.modulus()) : y;
    }

    void check() const {
        for (int q = 0; q + 1 <= top(); ++q) detail::check_composable(d_in(q + 1), d_out(q + 1), ring, q + 1);
    }

    AbelianGroupReport cohomology(int q) const { return padic::cohomology(d_in(q), d_out(q), ring, q); }

    /// Same complex reinterpreted with another coefficient ring (entries reduced).
    CochainComplex with_ring(const RingTag& r) const {
        CochainComplex c = *this;
        c.ring = r;
        if (r.is_modular()) {
            BigInt m = r.modulus();
            for (auto& M : c.d)
                for (std::size_t i = 0; i < M.rows(); ++i)
                    for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = mod_floor(M(i, j), m);
        }
        return c;
    }
};

}  // namespace padic
