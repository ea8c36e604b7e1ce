#include "padic/linalg.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

using namespace padic;

namespace {

IntMatrix mat(std::size_t r, std::size_t c, std::initializer_list<long> v) {
    IntMatrix m(r, c);
    auto it = v.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Random composable pair A: Z^a -> Z^b, B: Z^b -> Z^c with B·A = 0.
std::pair<IntMatrix, IntMatrix> random_complex(std::mt19937& rng, std::size_t a, std::size_t b, std::size_t c) {
    std::size_t k = 1 + rng() % 2;
    IntMatrix A = random_matrix(rng, b, k) * random_matrix(rng, k, a);
    // rows of B are combinations of the left kernel of A
    IntMatrix K = kernel_basis(A.transpose());  // columns y with y^T A = 0
    IntMatrix B = random_matrix(rng, c, K.cols()) * K.transpose();
    if (K.cols() == 0) B = IntMatrix(c, b);
    return {A, B};
}

// gcd of all k x k minors (determinantal divisor), by enumeration.
BigInt determinantal_divisor(const IntMatrix& M, std::size_t k) {
    BigInt g = 0;
    std::vector<std::size_t> rows, cols;
    std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t, std::size_t, const std::function<void()>&)>
        choose = [&](std::size_t start, std::vector<std::size_t>& acc, std::size_t n, std::size_t kk,
                     const std::function<void()>& f) {
            if (acc.size() == kk) { f(); return; }
            for (std::size_t i = start; i < n; ++i) {
                acc.push_back(i);
                choose(i + 1, acc, n, kk, f);
                acc.pop_back();
            }
        };
    choose(0, rows, M.rows(), k, [&] {
        choose(0, cols, M.cols(), k, [&] {
            IntMatrix S(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) S(i, j) = M(rows[i], cols[j]);
            BigInt d = determinant(S);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        });
    });
    return g;
}

// All vectors of (Z/m)^n.
std::vector<IntVec> all_vectors(std::size_t n, long m) {
    std::vector<IntVec> out;
    IntVec v(n, BigInt(0));
    for (;;) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < n) {
            v[i] += 1;
            if (v[i] < m) break;
            v[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

}  // namespace

TEST(Smith, Examples) {
    auto s = smith_normal_form(mat(1, 1, {2}));
    EXPECT_EQ(s.D(0, 0), 2);
    auto id = smith_normal_form(IntMatrix::identity(2));
    EXPECT_EQ(id.D, IntMatrix::identity(2));
    auto t = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
    EXPECT_EQ(t.invariant_factors(), (std::vector<BigInt>{2, 4}));
}

TEST(Smith, SparseFrontEnd) {
    SparseIntMatrix M(2, 3);
    M.set(0, 0, 4);
    M.set(1, 2, 6);
    auto [U, D, V] = smith_normal_form(M);
    EXPECT_EQ(U.to_dense() * M.to_dense() * V.to_dense(), D.to_dense());
    EXPECT_EQ(D.get(0, 0), 2);
    EXPECT_EQ(D.get(1, 1), 12);
    EXPECT_EQ(D.nonzeros(), 2u);
}

TEST(Smith, RandomPropertiesAndDeterminantalDivisors) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix M = random_matrix(rng, r, c, -6, 6);
        auto s = smith_normal_form(M);
        ASSERT_TRUE(verify_smith(M, s)) << M.str();
        BigInt prev = 1;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            BigInt dk = determinantal_divisor(M, k);
            if (dk == 0) {
                EXPECT_EQ(s.rank, k - 1);
                break;
            }
            EXPECT_EQ(s.D(k - 1, k - 1), dk / prev);
            prev = dk;
        }
    }
}

TEST(Kernel, SaturatedAndCorrect) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix A = random_matrix(rng, 2, 4) * random_matrix(rng, 4, 5);
        IntMatrix K = kernel_basis(A);
        EXPECT_TRUE((A * K).is_zero());
        // saturated: Smith form of K has all invariant factors 1
        auto s = smith_normal_form(K);
        for (std::size_t i = 0; i < s.rank; ++i) EXPECT_EQ(s.D(i, i), 1);
        EXPECT_EQ(s.rank, K.cols());
    }
}

TEST(Hermite, CanonicalForEquivalentGenerators) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix G = random_matrix(rng, 3, 4);
        IntMatrix Umix = IntMatrix::identity(3);
        Umix.add_row(0, 1, 2);
        Umix.add_row(2, 0, -3);
        Umix.swap_rows(1, 2);
        IntMatrix H1 = hermite_normal_form(G);
        IntMatrix H2 = hermite_normal_form(Umix * G);
        EXPECT_EQ(H1, H2);
    }
    IntMatrix H = hermite_normal_form(mat(2, 2, {4, 6, 2, 3}));
    EXPECT_EQ(H, mat(1, 2, {2, 3}));
}

TEST(Cohomology, ZeroMaps) {
    auto r = cohomology(IntMatrix(3, 0), IntMatrix(0, 3), RingTag::integer(2));
    EXPECT_EQ(r.free_rank, 3u);
    EXPECT_TRUE(r.torsion.empty());
}

TEST(Cohomology, TimesTwo) {
    IntMatrix d0 = mat(1, 1, {2});
    auto h1 = cohomology(d0, IntMatrix(0, 1), RingTag::integer(2), 1);
    EXPECT_EQ(h1.free_rank, 0u);
    EXPECT_EQ(h1.torsion, (std::vector<BigInt>{2}));
    auto h0 = cohomology(IntMatrix(1, 0), d0, RingTag::integer(2), 0);
    EXPECT_EQ(h0.free_rank, 0u);
    EXPECT_TRUE(h0.torsion.empty());
    auto h1p3 = cohomology(d0, IntMatrix(0, 1), RingTag::integer(3), 1);
    EXPECT_TRUE(h1p3.is_trivial());
    EXPECT_EQ(h1p3.prime_to_p_torsion, (std::vector<BigInt>{2}));
}

TEST(Cohomology, RejectsNonComplex) {
    EXPECT_THROW(cohomology(mat(1, 1, {1}), mat(1, 1, {1}), RingTag::integer(2), 4), StructuralError);
    EXPECT_THROW(cohomology(mat(2, 1, {1, 1}), mat(1, 1, {1}), RingTag::integer(2)), std::invalid_argument);
    try {
        cohomology(mat(1, 1, {1}), mat(1, 1, {1}), RingTag::integer(2), 4);
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("degree 4"), std::string::npos);
    }
}

TEST(Cohomology, ClassifyTorsion) {
    IntMatrix d0 = mat(1, 1, {6});
    auto h = cohomology(d0, IntMatrix(0, 1), RingTag::integer(2), 1);
    ASSERT_EQ(h.torsion, (std::vector<BigInt>{2}));
    EXPECT_EQ((*h.classify({BigInt(1)}))[0], 1);
    EXPECT_EQ((*h.classify({BigInt(3)}))[0], 1);
    EXPECT_TRUE(h.is_zero_class({BigInt(2)}));
}

// p-local integer cohomology against determinantal divisors and ranks.
TEST(Cohomology, IntegerAgainstDeterminantalOracle) {
    std::mt19937 rng(21);
    for (long p : {2L, 3L}) {
        for (int trial = 0; trial < 150; ++trial) {
            std::size_t a = 1 + rng() % 3, b = 1 + rng() % 4, c = 1 + rng() % 3;
            auto [A, B] = random_complex(rng, a, b, c);
            auto h = cohomology(A, B, RingTag::integer(p));
            auto sa = smith_normal_form(A);
            auto sb = smith_normal_form(B);
            EXPECT_EQ(h.free_rank, b - sa.rank - sb.rank);
            std::multiset<BigInt> expect;
            BigInt prev = 1;
            for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
                BigInt dk = determinantal_divisor(A, k);
                if (dk == 0) break;
                BigInt inv = dk / prev;
                prev = dk;
                long e = vp(inv, p);
                if (e > 0) expect.insert(pow_int(p, static_cast<unsigned long>(e)));
            }
            EXPECT_EQ(std::multiset<BigInt>(h.torsion.begin(), h.torsion.end()), expect);
            for (const auto& g : h.generators) EXPECT_TRUE(is_zero_vec(B.apply(g)));
        }
    }
}

// Z/p^N cohomology against brute-force enumeration: for every j, the number
// of classes killed by p^j must match.
TEST(Cohomology, ModularAgainstBruteForce) {
    std::mt19937 rng(99);
    for (long p : {2L, 3L}) {
        for (int N = 1; N <= 3; ++N) {
            long m = 1;
            for (int i = 0; i < N; ++i) m *= p;
            if (m > 9 && p == 3) continue;
            for (int trial = 0; trial < 12; ++trial) {
                std::size_t a = 1 + rng() % 3, b = 1 + rng() % 3, c = 1 + rng() % 3;
                auto [A, B] = random_complex(rng, a, b, c);
                auto h = cohomology(A, B, RingTag::modular(p, N));
                std::vector<IntVec> vs = all_vectors(b, m);
                std::set<IntVec> Z, Bset;
                for (const auto& x : vs)
                    if (is_zero_vec(reduce_mod(B.apply(x), m))) Z.insert(x);
                for (const auto& y : all_vectors(a, m)) Bset.insert(reduce_mod(A.apply(y), m));
                for (int j = 0; j <= N; ++j) {
                    BigInt pj = pow_int(p, static_cast<unsigned long>(j));
                    std::size_t killed = 0;
                    for (const auto& x : Z) {
                        IntVec y = x;
                        for (auto& t : y) t *= pj;
                        if (Bset.count(reduce_mod(y, m))) ++killed;
                    }
                    BigInt expect = 1;
                    for (std::size_t f = 0; f < h.free_rank; ++f) expect *= std::min(pj, BigInt(m));
                    for (const auto& t : h.torsion) expect *= std::min(pj, t);
                    EXPECT_EQ(BigInt(killed), expect * BigInt(Bset.size()))
                        << "p=" << p << " N=" << N << " j=" << j;
                }
                // classification is a bijection onto the reported group
                std::set<IntVec> classes;
                for (const auto& x : Z) classes.insert(*h.classify(x));
                BigInt order = 1;
                for (std::size_t f = 0; f < h.free_rank; ++f) order *= m;
                for (const auto& t : h.torsion) order *= t;
                EXPECT_EQ(BigInt(classes.size()), order);
            }
        }
    }
}

TEST(Solve, ModularAndRational) {
    IntMatrix A = mat(2, 2, {2, 0, 0, 3});
    auto x = solve_mod(A, {BigInt(1), BigInt(1)}, 9);
    EXPECT_FALSE(x.has_value());
    auto y = solve_mod(A, {BigInt(4), BigInt(3)}, 9);
    ASSERT_TRUE(y.has_value());
    EXPECT_TRUE(is_zero_vec(reduce_mod(IntVec{A.apply(*y)[0] - 4, A.apply(*y)[1] - 3}, 9)));
    LinearSolver s(A);
    auto r = s.solve_rational({Rational(1), Rational(1)});
    ASSERT_TRUE(r);
    EXPECT_EQ((*r)[0], Rational(1, 2));
    EXPECT_FALSE(s.solve_plocal({Rational(1), Rational(1)}, 2).has_value());
    EXPECT_TRUE(s.solve_plocal({Rational(2), Rational(1)}, 2).has_value());
}

TEST(LatticeMembership, Examples) {
    RatVec g1{Rational(1), Rational(2)}, g2{Rational(0), Rational(3)};
    auto c = lattice_membership(g1, {g1, g2}, 2);
    ASSERT_TRUE(c);
    EXPECT_EQ((*c)[0], 1);
    EXPECT_EQ((*c)[1], 0);
    RatVec half{Rational(1, 2), Rational(1)};
    auto res = lattice_membership_certified(half, {g1}, 2);
    EXPECT_FALSE(res.coefficients);
    ASSERT_TRUE(res.certificate);
    EXPECT_LT(valuation(dot(*res.certificate, half), 2), Valuation::of(0));
    EXPECT_GE(valuation(dot(*res.certificate, g1), 2), Valuation::of(0));
    // 1/3 of g1 is fine 2-locally
    RatVec third{Rational(1, 3), Rational(2, 3)};
    EXPECT_TRUE(lattice_membership(third, {g1}, 2).has_value());
}

TEST(LatticeMembership, AgreesWithExhaustiveSearch) {
    std::mt19937 rng(2024);
    for (long p : {2L, 3L}) {
        const long box = p * p * p;
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t k = 1 + rng() % 3, dim = 1 + rng() % 4;
            std::vector<RatVec> gens;
            std::uniform_int_distribution<int> ent(-3, 3);
            for (std::size_t i = 0; i < k; ++i) {
                RatVec g(dim);
                for (auto& x : g) x = ent(rng);
                gens.push_back(g);
            }
            std::uniform_int_distribution<int> cf(-2, 2);
            const long divisors[] = {1, p, 2 * p + 1, p * p};
            Rational dv = divisors[rng() % 4];
            RatVec t(dim, Rational(0));
            for (std::size_t i = 0; i < k; ++i) {
                Rational ci = cf(rng);
                for (std::size_t j = 0; j < dim; ++j) t[j] += ci * gens[i][j];
            }
            for (auto& x : t) x /= dv;
            auto res = lattice_membership_certified(t, gens, p);
            if (res.coefficients) {
                RatVec s(dim, Rational(0));
                for (std::size_t i = 0; i < k; ++i) {
                    EXPECT_GE(valuation((*res.coefficients)[i], p), Valuation::of(0));
                    for (std::size_t j = 0; j < dim; ++j) s[j] += (*res.coefficients)[i] * gens[i][j];
                }
                EXPECT_EQ(s, t);
            } else {
                ASSERT_TRUE(res.certificate);
                for (const auto& g : gens) EXPECT_GE(valuation(dot(*res.certificate, g), p), Valuation::of(0));
                EXPECT_LT(valuation(dot(*res.certificate, t), p), Valuation::of(0));
            }
            // exhaustive: u·t = Σ c_i g_i with |c_i| <= p^3 and u in {1, 2p+1}
            bool found = false;
            std::vector<long> c(k, -box);
            for (;;) {
                for (long u : {1L, 2 * p + 1}) {
                    bool ok = true;
                    for (std::size_t j = 0; j < dim && ok; ++j) {
                        Rational s = 0;
                        for (std::size_t i = 0; i < k; ++i) s += Rational(c[i]) * gens[i][j];
                        ok = s == Rational(u) * t[j];
                    }
                    found = found || ok;
                }
                if (found) break;
                std::size_t i = 0;
                while (i < k && ++c[i] > box) c[i++] = -box;
                if (i == k) break;
            }
            if (found) {
                EXPECT_TRUE(res.coefficients.has_value());
            }
        }
    }
}

TEST(PLocalLattice, InsertCoordinatesAndEquality) {
    PLocalLattice L(3, 2);
    L.insert({Rational(2), Rational(1), Rational(0)});
    L.insert({Rational(4), Rational(0), Rational(1)});
    L.insert({Rational(6), Rational(1), Rational(1)});  // redundant
    EXPECT_EQ(L.rank(), 2u);
    auto c = L.coordinates({Rational(2, 3), Rational(1, 3), Rational(0)});
    EXPECT_TRUE(c.has_value());
    EXPECT_FALSE(L.contains({Rational(1), Rational(1, 2), Rational(0)}));
    PLocalLattice M(3, 2);
    M.insert({Rational(6), Rational(1), Rational(1)});
    M.insert({Rational(2), Rational(1), Rational(0)});
    EXPECT_TRUE(same_lattice(L, M));
    PLocalLattice N(3, 2);
    N.insert({Rational(4), Rational(2), Rational(0)});
    N.insert({Rational(4), Rational(0), Rational(1)});
    EXPECT_FALSE(same_lattice(L, N));
    EXPECT_TRUE(L.contains_lattice(N));
    auto basis = L.basis();
    auto co = L.coordinates({Rational(6), Rational(1), Rational(1)});
    ASSERT_TRUE(co);
    RatVec back(3, Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) back[j] += (*co)[i] * basis[i][j];
    EXPECT_EQ(back, (RatVec{Rational(6), Rational(1), Rational(1)}));
}
