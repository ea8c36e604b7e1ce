#include "padic/simplicial.hpp"

#include <gtest/gtest.h>

using namespace padic;

namespace {
std::vector<std::string> face_names(const SimplicialSet& X, const std::string& s) {
    SimplexRef r = *X.find(s);
    std::vector<std::string> out;
    for (int i = 0; i <= r.dim; ++i) out.push_back(X.format(X.face_of(r, i)));
    return out;
}
}  // namespace

TEST(StandardSpaces, Sphere1) {
    auto X = standard_space("sphere", 1);
    EXPECT_EQ(X.counts(), (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(face_names(X, "e"), (std::vector<std::string>{"*", "*"}));
}

TEST(StandardSpaces, SphereHigherHasDegenerateFaces) {
    auto X = standard_space("sphere", 3);
    EXPECT_EQ(X.counts(), (std::vector<std::size_t>{1, 0, 0, 1}));
    EXPECT_EQ(face_names(X, "e"), (std::vector<std::string>(4, "s1s0(*)")));
}

TEST(StandardSpaces, DeltaCounts) {
    EXPECT_EQ(standard_space("delta", 2).counts(), (std::vector<std::size_t>{3, 3, 1}));
    EXPECT_EQ(standard_space("delta", 3).counts(), (std::vector<std::size_t>{4, 6, 4, 1}));
    EXPECT_EQ(standard_space("boundary_delta", 2).counts(), (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(face_names(standard_space("delta", 2), "012"), (std::vector<std::string>{"12", "02", "01"}));
}

TEST(StandardSpaces, RP2FaceTable) {
    auto X = standard_space("rp2");
    EXPECT_EQ(face_names(X, "U"), (std::vector<std::string>{"b", "a", "c"}));
    EXPECT_EQ(face_names(X, "V"), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(face_names(X, "a"), (std::vector<std::string>{"w", "v"}));
    EXPECT_EQ(face_names(X, "b"), (std::vector<std::string>{"w", "v"}));
    EXPECT_EQ(face_names(X, "c"), (std::vector<std::string>{"v", "v"}));
    EXPECT_EQ(euler_characteristic(X), 1);
}

TEST(StandardSpaces, Errors) {
    EXPECT_THROW(standard_space("torus", 2), ConfigError);
    EXPECT_THROW(standard_space("delta", -1), ConfigError);
    EXPECT_THROW(standard_space("boundary_delta", 0), ConfigError);
}

TEST(Degeneracies, NormalForm) {
    EXPECT_EQ(normalize_degeneracies({0, 0}), (std::vector<int>{1, 0}));
    EXPECT_EQ(normalize_degeneracies({0, 1}), (std::vector<int>{2, 0}));
    EXPECT_EQ(normalize_degeneracies({2, 0}), (std::vector<int>{2, 0}));
}

TEST(Degeneracies, SimplicialIdentitiesOnDegenerateSimplices) {
    // d_i s_j and s_i s_j relations on every degenerate simplex of low dimension
    for (const char* nm : {"rp2", "sphere:2", "delta:3", "sphere:3"}) {
        auto X = space_from_spec(nm);
        for (int n = 0; n <= X.dim(); ++n)
            for (std::size_t k = 0; k < X.count(n); ++k) {
                DegenerateImage x = SimplicialSet::simplex(SimplexRef{n, k});
                for (int j = 0; j <= n; ++j) {
                    DegenerateImage sx = X.degeneracy(x, j);
                    EXPECT_EQ(X.face(sx, j), x);
                    EXPECT_EQ(X.face(sx, j + 1), x);
                    for (int i = 0; i <= n + 1; ++i) {
                        if (i < j && n > 0) {
                            EXPECT_EQ(X.face(sx, i), X.degeneracy(X.face(x, i), j - 1));
                        }
                        if (i > j + 1 && n > 0) {
                            EXPECT_EQ(X.face(sx, i), X.degeneracy(X.face(x, i - 1), j));
                        }
                    }
                    for (int i = 0; i <= j; ++i)
                        EXPECT_EQ(X.degeneracy(X.degeneracy(x, j), i), X.degeneracy(X.degeneracy(x, i), j + 1));
                    // d_i d_j on the degenerate simplex sx
                    for (int b = 1; n >= 1 && b <= n + 1; ++b)
                        for (int a = 0; a < b; ++a)
                            EXPECT_EQ(X.face(X.face(sx, b), a), X.face(X.face(sx, a), b - 1));
                }
            }
    }
}

TEST(TextFormat, RoundTrip) {
    for (const char* nm : {"rp2", "sphere:2", "sphere:3", "delta:2", "boundary_delta:3"}) {
        auto X = space_from_spec(nm);
        std::string text = dump_space(X);
        auto Y = load_space(text);
        EXPECT_EQ(dump_space(Y), text);
    }
}

TEST(TextFormat, MirrorsTable) {
    std::string text =
        "dim 0: v w\n"
        "dim 1: a b c\n"
        "dim 2: U V\n"
        "face a: w v\nface b: w v\nface c: v v\n"
        "face U: b a c\nface V: a b c\n";
    auto X = load_space(text);
    EXPECT_EQ(X.counts(), (std::vector<std::size_t>{2, 3, 2}));
    EXPECT_EQ(euler_characteristic(X), 1);
}

TEST(TextFormat, RejectsBrokenIdentities) {
    std::string bad =
        "dim 0: v w\ndim 1: a b c\ndim 2: U\n"
        "face a: w v\nface b: w v\nface c: v v\n"
        "face U: c a b\n";
    EXPECT_THROW(load_space(bad), ConfigError);
    EXPECT_THROW(load_space("dim 0: v\ndim 1: a\nface a: v x\n"), ConfigError);
    EXPECT_THROW(load_space("dim 0: v\nbogus line\n"), ConfigError);
}

TEST(CochainComplex, Sphere2Zero) {
    auto C = normalized_cochain_complex(standard_space("sphere", 2), RingTag::integer(3));
    for (const auto& d : C.d) EXPECT_TRUE(d.is_zero());
    EXPECT_EQ(C.cohomology(0).free_rank, 1u);
    EXPECT_EQ(C.cohomology(1).free_rank, 0u);
    EXPECT_EQ(C.cohomology(2).free_rank, 1u);
}

TEST(CochainComplex, RP2Integer) {
    auto X = standard_space("rp2");
    auto C = normalized_cochain_complex(X, RingTag::integer(2));
    EXPECT_EQ(C.cohomology(0).free_rank, 1u);
    EXPECT_TRUE(C.cohomology(1).is_trivial());
    EXPECT_EQ(C.cohomology(2).torsion, (std::vector<BigInt>{2}));
    EXPECT_EQ(C.cohomology(2).free_rank, 0u);
    auto C3 = normalized_cochain_complex(X, RingTag::integer(3));
    EXPECT_EQ(C3.cohomology(0).free_rank, 1u);
    EXPECT_TRUE(C3.cohomology(1).is_trivial());
    EXPECT_TRUE(C3.cohomology(2).is_trivial());
    // Euler characteristic over Q: alternating free ranks at an odd prime
    long chi = 0;
    for (int q = 0; q <= 2; ++q) chi += (q % 2 ? -1 : 1) * static_cast<long>(C3.cohomology(q).free_rank);
    EXPECT_EQ(chi, euler_characteristic(X));
}

TEST(CochainComplex, Delta1OverF2) {
    auto C = normalized_cochain_complex(standard_space("delta", 1), RingTag::field(2));
    EXPECT_EQ(C.cohomology(0).free_rank, 1u);
    EXPECT_TRUE(C.cohomology(1).is_trivial());
}

TEST(CochainComplex, DdZeroOnAllSpaces) {
    for (const char* nm : {"rp2", "sphere:1", "sphere:2", "delta:3", "boundary_delta:3", "delta:4"})
        for (RingTag r : {RingTag::integer(2), RingTag::field(2), RingTag::modular(3, 2)}) {
            EXPECT_NO_THROW(normalized_cochain_complex(space_from_spec(nm), r).check());
        }
}

TEST(CochainComplex, EulerCharacteristics) {
    for (const char* nm : {"rp2", "sphere:1", "sphere:2", "sphere:3", "delta:3", "boundary_delta:3"}) {
        auto X = space_from_spec(nm);
        auto C = normalized_cochain_complex(X, RingTag::integer(3));
        long chi = 0;
        for (int q = 0; q <= X.dim(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<long>(C.cohomology(q).free_rank);
        EXPECT_EQ(chi, euler_characteristic(X)) << nm;
    }
}
