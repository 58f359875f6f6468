#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "awtp/awtp.hpp"

using namespace awtp;

namespace {

std::uint64_t brute_order(std::uint64_t a, std::uint64_t q) {
    std::uint64_t x = a % q, k = 1;
    while (x != 1) {
        x = x * a % q;
        ++k;
    }
    return k;
}

}  // namespace

TEST(PrimeField, Construction) {
    EXPECT_EQ(make_prime_field(13).order(), 13u);
    EXPECT_EQ(make_prime_field(37).order(), 37u);
    EXPECT_EQ(make_prime_field(2).order(), 2u);
    try {
        make_prime_field(12);
        FAIL() << "12 accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
    EXPECT_THROW(make_prime_field(1), Error);
    EXPECT_THROW(make_prime_field(0), Error);
    EXPECT_THROW(make_prime_field(std::uint64_t{1} << 31), Error);
    EXPECT_EQ(make_prime_field(2147483647).order(), 2147483647u);
}

TEST(PrimeField, Axioms) {
    for (std::uint32_t q : {2u, 13u, 37u, 65521u, 2147483647u}) {
        const PrimeField F(q);
        Rng rng(q);
        for (int i = 0; i < 500; ++i) {
            const Fq a = F.uniform(rng), b = F.uniform(rng), c = F.uniform(rng);
            EXPECT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
            EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
            EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
            EXPECT_EQ(F.sub(a, b), F.add(a, F.neg(b)));
            EXPECT_EQ(F.mul(a, b).v, static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % q));
            if (a.v != 0) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
        }
    }
    EXPECT_THROW(PrimeField(13).inv(Fq{0}), Error);
}

TEST(PrimeField, FromSignedIntegers) {
    const PrimeField F(13);
    EXPECT_EQ(F.from(-1).v, 12u);
    EXPECT_EQ(F.from(27).v, 1u);
    EXPECT_EQ(F.from(-26).v, 0u);
}

TEST(Generator, SmallestElementOfFullOrder) {
    EXPECT_EQ(find_generator(PrimeField(13)).v, 2u);
    EXPECT_EQ(find_generator(PrimeField(2)).v, 1u);
    for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u, 17u, 23u, 37u, 41u, 97u, 101u, 257u}) {
        const PrimeField F(q);
        const Fq g = find_generator(F);
        EXPECT_EQ(brute_order(g.v, q), q - 1) << q;
        for (std::uint32_t h = 2; h < g.v; ++h) EXPECT_LT(brute_order(h, q), q - 1) << q << " " << h;
        EXPECT_EQ(F.multiplicative_order(g), q - 1);
    }
}

TEST(DthRoot, Examples) {
    const PrimeField F(13);
    EXPECT_EQ(dth_root(F, Fq{6}, 5).v, 2u);
    EXPECT_EQ(dth_root(F, Fq{0}, 5).v, 0u);
    EXPECT_EQ(dth_root(F, Fq{1}, 7).v, 1u);
    try {
        dth_root(F, Fq{5}, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ExponentNotCoprime);
    }
}

TEST(DthRoot, InvertsPowerWhenCoprime) {
    for (std::uint32_t q : {13u, 37u, 101u}) {
        const PrimeField F(q);
        for (std::uint64_t d = 1; d < 3 * q; ++d) {
            if (std::gcd(d, std::uint64_t{q - 1}) != 1) continue;
            for (std::uint32_t x = 0; x < q; ++x) EXPECT_EQ(dth_root(F, F.pow(Fq{x}, d), d).v, x);
        }
    }
}

TEST(Polynomial, DivmodAndGcd) {
    const PrimeField F(13);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        poly::Poly a = F.uniform_vector(rng, 1 + rng.below(9));
        poly::Poly b = F.uniform_vector(rng, 1 + rng.below(6));
        b.back() = F.uniform_nonzero(rng);
        const auto [quot, rem] = poly::divmod(F, a, b);
        EXPECT_LT(poly::degree(rem), poly::degree(b));
        EXPECT_EQ(poly::trimmed(poly::add(F, poly::mul(F, quot, b), rem)), poly::trimmed(a));
        const poly::Poly g = poly::gcd(F, a, b);
        if (!poly::is_zero(g)) {
            EXPECT_EQ(g.back().v, 1u);
            EXPECT_TRUE(poly::is_zero(poly::mod(F, a, g)));
            EXPECT_TRUE(poly::is_zero(poly::mod(F, b, g)));
        }
    }
}

TEST(Polynomial, IrreducibilityMatchesRootFreeness) {
    // degree 2 and 3: irreducible iff no root in F_q
    const PrimeField F(7);
    for (unsigned deg : {2u, 3u}) {
        std::uint64_t total = 1;
        for (unsigned i = 0; i < deg; ++i) total *= 7;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            poly::Poly m(deg + 1, F.zero());
            std::uint64_t rem = idx;
            for (unsigned i = 0; i < deg; ++i) {
                m[i] = Fq{static_cast<std::uint32_t>(rem % 7)};
                rem /= 7;
            }
            m[deg] = F.one();
            bool root = false;
            for (std::uint32_t x = 0; x < 7; ++x) root |= poly::eval(F, m, Fq{x}).v == 0;
            EXPECT_EQ(poly::is_irreducible(F, m), !root);
        }
    }
}

TEST(ExtensionField, OrderAndModulus) {
    const PrimeField F(13);
    const ExtField E1 = make_extension_field(F, 1);
    EXPECT_EQ(E1.order(), BigInt(13));
    const ExtField E2 = make_extension_field(F, 2);
    EXPECT_EQ(E2.order(), BigInt(169));
    for (unsigned mu : {2u, 3u}) {
        const ExtField E(F, mu);
        ASSERT_EQ(E.modulus().size(), mu + 1);
        EXPECT_EQ(E.modulus().back().v, 1u);
        for (std::uint32_t x = 0; x < 13; ++x) EXPECT_NE(poly::eval(F, E.modulus(), Fq{x}).v, 0u);
    }
    EXPECT_TRUE(poly::is_irreducible(F, ExtField(F, 4).modulus()));
}

TEST(ExtensionField, MuOneIsTheBaseField) {
    const PrimeField F(13);
    const ExtField E(F, 1);
    for (std::uint32_t a = 0; a < 13; ++a)
        for (std::uint32_t b = 0; b < 13; ++b) {
            const ExtElem x = E.from_vector(FqVector{Fq{a}}), y = E.from_vector(FqVector{Fq{b}});
            EXPECT_EQ(E.to_vector(E.mul(x, y)).at(0), F.mul(Fq{a}, Fq{b}));
            EXPECT_EQ(E.to_vector(E.add(x, y)).at(0), F.add(Fq{a}, Fq{b}));
        }
}

TEST(ExtensionField, FieldAxiomsAndInverse) {
    const PrimeField F(13);
    const ExtField E(F, 2);
    std::set<FqVector> seen;
    for (std::uint64_t i = 0; i < 169; ++i) {
        const ExtElem a = E.from_index(i);
        seen.insert(E.to_vector(a));
        if (i != 0) EXPECT_EQ(E.mul(a, E.inv(a)), E.one());
        EXPECT_EQ(E.pow(a, 169), a);
    }
    EXPECT_EQ(seen.size(), 169u);
    Rng rng(9);
    const ExtField E3(F, 3);
    for (int i = 0; i < 300; ++i) {
        const ExtElem a = E3.uniform(rng), b = E3.uniform(rng), c = E3.uniform(rng);
        EXPECT_EQ(E3.mul(E3.mul(a, b), c), E3.mul(a, E3.mul(b, c)));
        EXPECT_EQ(E3.mul(a, E3.add(b, c)), E3.add(E3.mul(a, b), E3.mul(a, c)));
    }
}

TEST(ExtensionField, PhiRoundTrip) {
    const PrimeField F(37);
    const ExtField E(F, 3);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const FqVector v = F.uniform_vector(rng, 3);
        EXPECT_EQ(E.to_vector(E.from_vector(v)), v);
        const ExtElem a = E.uniform(rng);
        EXPECT_EQ(E.from_vector(E.to_vector(a)), a);
    }
    EXPECT_THROW(E.from_vector(FqVector(2)), Error);
}

TEST(ExtensionField, DthRoot) {
    const PrimeField F(13);
    const ExtField E(F, 2);
    // |E*| = 168 = 2^3 * 3 * 7, so d = 5 is coprime
    for (std::uint64_t i = 0; i < 169; ++i) {
        const ExtElem x = E.from_index(i);
        EXPECT_EQ(dth_root(E, E.pow(x, 5), 5), x);
    }
    EXPECT_THROW(dth_root(E, E.one(), 7), Error);
}

TEST(LinearAlgebra, RankNullspaceInverse) {
    const PrimeField F(13);
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        const std::size_t r = 1 + rng.below(5), c = 1 + rng.below(6);
        Matrix M(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) M(i, j) = rng.below(3) ? F.uniform(rng) : F.zero();
        const auto ker = nullspace(F, M);
        EXPECT_EQ(ker.size() + rank(F, M), c);
        for (const auto& x : ker)
            for (auto y : multiply(F, M, x)) EXPECT_EQ(y.v, 0u);
        if (r == c) {
            const auto inv = inverse(F, M);
            EXPECT_EQ(inv.has_value(), determinant(F, M).v != 0);
            if (inv) EXPECT_EQ(multiply(F, M, *inv), Matrix::identity(F, r));
        }
    }
}

TEST(LinearAlgebra, SolveAffineContainsEverySolution) {
    // exhaustive: all x in F_5^3 with A x = b must be in the returned space, and nothing else
    const PrimeField F(5);
    Rng rng(17);
    for (int it = 0; it < 60; ++it) {
        Matrix A(2, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = F.uniform(rng);
        const FqVector b = F.uniform_vector(rng, 2);
        const AffineSpace S = solve_affine(F, A, b);
        std::size_t count = 0;
        for (std::uint32_t i = 0; i < 125; ++i) {
            const FqVector x{Fq{i % 5}, Fq{i / 5 % 5}, Fq{i / 25}};
            const bool sol = multiply(F, A, x) == b;
            count += sol;
            EXPECT_EQ(S.contains(F, x), sol);
        }
        std::size_t expected = S.empty() ? 0 : 1;
        for (std::size_t d = 0; d < S.dimension() && !S.empty(); ++d) expected *= 5;
        EXPECT_EQ(count, expected);
    }
}

TEST(LinearAlgebra, LeadingProjection) {
    const PrimeField F(7);
    Rng rng(2);
    for (int it = 0; it < 50; ++it) {
        const AffineSpace S = random_affine_subspace(F, 5, 2, rng);
        const AffineSpace P = S.leading(F, 3);
        EXPECT_LE(P.dimension(), 2u);
        std::set<FqVector> from_full, from_proj;
        S.for_each_point(F, [&](FqVector x) { from_full.insert(FqVector(x.begin(), x.begin() + 3)); });
        P.for_each_point(F, [&](FqVector x) { from_proj.insert(std::move(x)); });
        EXPECT_EQ(from_full, from_proj);
    }
}
