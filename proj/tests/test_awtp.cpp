#include <gtest/gtest.h>

#include "awtp/awtp.hpp"

using namespace awtp;

namespace {

AwtpParams reference(std::uint64_t seed = 1) {
    return AwtpParams{37, 6, 2, 6, 1, 2, 4, 2, Rational(1, 6), Rational(1, 3), seed};
}

std::vector<ExtElem> random_message(const AwtpCode& code, Rng& rng) {
    std::vector<ExtElem> m;
    for (unsigned i = 0; i < code.amd().blocks(); ++i) m.push_back(code.amd().field().uniform(rng));
    return m;
}

}  // namespace

TEST(Params, DerivedSizes) {
    const AwtpParams p = reference();
    EXPECT_EQ(p.n(), 8u);
    EXPECT_EQ(p.n1(), 4u);
    EXPECT_EQ(p.reads(), 1u);
    EXPECT_EQ(p.writes(), 2u);
    EXPECT_EQ(p.k(), 14u);
    EXPECT_EQ(p.amd_length(), 4u);
}

TEST(Params, ReferenceInstanceFeasibility) {
    const FeasibilityReport rep = check_params(reference());
    EXPECT_TRUE(rep.structural_ok());
    EXPECT_TRUE(rep.operative_ok);
    EXPECT_EQ(rep.t_star, 4u);
    EXPECT_EQ(rep.max_errors, 2);
    ASSERT_TRUE(rep.asymptotic_bound.has_value());
    EXPECT_LT(*rep.asymptotic_bound, 0);
    EXPECT_FALSE(rep.asymptotic_ok);
    // u R = 1/3, so the bound is 2/3 - (2/3)(2 (1/3 + 3) + 1)/5 = -16/45
    EXPECT_EQ(*rep.asymptotic_bound, Rational(-16, 45));
}

TEST(Params, WriteBudgetAboveThresholdIsInfeasible) {
    AwtpParams p = reference();
    p.rho_w = Rational(1, 2);
    const FeasibilityReport rep = check_params(p);
    EXPECT_TRUE(rep.structural_ok());
    EXPECT_FALSE(rep.operative_ok);
    try {
        AwtpCode code(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleParameters);
    }
}

TEST(Params, NoAdversaryAlwaysFeasible) {
    AwtpParams p = reference();
    p.rho_r = 0;
    p.rho_w = 0;
    const FeasibilityReport rep = check_params(p);
    EXPECT_TRUE(rep.feasible());
    EXPECT_EQ(p.k(), 8u);
}

TEST(Params, StructuralFailures) {
    auto failures = [](AwtpParams p) { return check_params(p).structural_failures.size(); };
    AwtpParams p = reference();
    p.q = 35;
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.q = 31;  // q <= N u
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.w = 5;
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.rho_r = Rational(1, 4);  // rho_r N not integral
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.d = 3;  // n1 = 4 < 5
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.d = 35;  // 37 | d + 2 (and n1 too small)
    EXPECT_GT(failures(p), 0u);
    p = reference();
    p.rho_r = 1;  // k = 8 + 36 > u N
    EXPECT_GT(failures(p), 0u);
    EXPECT_EQ(failures(reference()), 0u);
}

TEST(Rate, Examples) {
    EXPECT_EQ(rate(reference()), Rational(1, 18));
    AwtpParams p = reference();
    p.d = 0;
    EXPECT_EQ(rate(p), 0);
}

TEST(Capacity, Examples) {
    EXPECT_EQ(capacity_bound(0.3, 0.2, 0, 2), 0.5);
    EXPECT_EQ(capacity_bound(0.25, 0.25, 1.0 / 16, 256), 0.546875);
    EXPECT_EQ(capacity_bound(0, 0, 0, 2), 1.0);
    EXPECT_THROW(capacity_bound(-0.1, 0, 0, 2), Error);
    EXPECT_THROW(capacity_bound(0.1, 0, 1, 2), Error);
    EXPECT_THROW(capacity_bound(0.1, 0, 0.1, 1), Error);
}

TEST(Capacity, MonotoneAndAboveFamilyRate) {
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b + a <= 10; ++b) {
            const double rr = a / 10.0, rw = b / 10.0;
            const double c = capacity_bound(rr, rw, 0, 2);
            if (a < 10) EXPECT_LE(capacity_bound(rr + 0.1, rw, 0, 2), c + 1e-12);
            if (b < 10) EXPECT_LE(capacity_bound(rr, rw + 0.1, 0, 2), c + 1e-12);
            for (double xi : {1e-3, 0.01, 0.1}) EXPECT_LT(family_rate(rr, rw, xi), c);
        }
}

TEST(Encode, CoefficientLayoutAndStages) {
    const AwtpCode code(reference());
    Rng rng(5);
    const auto m = random_message(code, rng);
    const EncodeTrace tr = awtp_encode_traced(code, m, rng);
    ASSERT_EQ(tr.coeffs.size(), 14u);
    EXPECT_EQ(FqVector(tr.coeffs.begin(), tr.coeffs.begin() + 8), tr.s.coords);
    EXPECT_EQ(FqVector(tr.coeffs.begin() + 8, tr.coeffs.end()), tr.filler);
    EXPECT_EQ(tr.filler.size(), 6u);
    EXPECT_TRUE(se_member(code.evasive(), tr.s));
    EXPECT_EQ(se_decode(code.evasive(), tr.s), tr.padded);
    EXPECT_EQ(amd_from_symbols(code.amd(), FqVector(tr.padded.begin(), tr.padded.begin() + 4)), tr.amd);
    EXPECT_EQ(tr.amd.x, m);
    EXPECT_EQ(tr.codeword, frs_encode(code.frs(), tr.coeffs));
}

TEST(Encode, DeterministicGivenSeed) {
    const AwtpCode code(reference());
    Rng a(77), b(77);
    Rng mr(1);
    const auto m = random_message(code, mr);
    EXPECT_EQ(awtp_encode(code, m, a), awtp_encode(code, m, b));
    EXPECT_THROW(awtp_encode(code, std::vector<ExtElem>(1, code.amd().field().one()), a), Error);
}

TEST(Decode, ZeroErrorRoundTrip) {
    for (auto p : {reference(), AwtpParams{41, 4, 2, 10, 1, 2, 4, 2, Rational(1, 10), Rational(1, 10), 0},
                   AwtpParams{101, 6, 2, 8, 2, 1, 4, 3, Rational(1, 8), Rational(1, 4), 0}}) {
        const AwtpCode code(p);
        Rng rng(6);
        for (int i = 0; i < 50; ++i) {
            const auto m = random_message(code, rng);
            const DecodeOutcome out = awtp_decode(code, awtp_encode(code, m, rng));
            ASSERT_TRUE(out.ok()) << to_string(out.kind);
            EXPECT_EQ(out.message, m);
            EXPECT_GE(out.list_size, 1u);
        }
    }
}

TEST(Decode, BoundedErrorRoundTrip) {
    const AwtpCode code(reference());
    const PrimeField& F = code.field();
    Rng rng(7);
    std::size_t failures = 0, list_max = 0;
    const int trials = 500;
    for (int i = 0; i < trials; ++i) {
        const auto m = random_message(code, rng);
        FrsCodeword y = awtp_encode(code, m, rng);
        for (auto j : details::random_positions(6, 2, rng))
            for (auto& x : y.symbols[j]) x = F.add(x, F.uniform(rng));
        const DecodeOutcome out = awtp_decode(code, y);
        list_max = std::max(list_max, out.list_size);
        if (!out.ok() || out.message != m) {
            ++failures;
            EXPECT_EQ(out.kind, DecodeOutcome::Kind::Ambiguous);
        }
    }
    // failures only through AMD forgeries: frequency within the union bound plus a 3 sigma margin
    const double bound = static_cast<double>(code.decoding_error_bound(list_max));
    EXPECT_LE(static_cast<double>(failures) / trials, bound + 3 * std::sqrt(bound / trials));
}

TEST(Decode, CraftedWrongCandidate) {
    // errors copied from a second codeword on the two writable positions
    const AwtpCode code(reference());
    Rng rng(8);
    std::size_t ambiguous = 0, list_max = 0;
    const int trials = 400;
    for (int i = 0; i < trials; ++i) {
        const auto m = random_message(code, rng), m2 = random_message(code, rng);
        const FrsCodeword c = awtp_encode(code, m, rng), c2 = awtp_encode(code, m2, rng);
        FrsCodeword y = c;
        for (unsigned j : {4u, 5u}) y.symbols[j] = c2.symbols[j];
        const DecodeOutcome out = awtp_decode(code, y);
        list_max = std::max(list_max, out.list_size);
        ambiguous += out.kind == DecodeOutcome::Kind::Ambiguous;
        EXPECT_NE(out.kind, DecodeOutcome::Kind::NoCandidate);
        if (out.ok()) EXPECT_EQ(out.message, m);
    }
    const double bound = static_cast<double>(code.decoding_error_bound(list_max));
    EXPECT_LE(static_cast<double>(ambiguous) / trials, bound + 3 * std::sqrt(bound / trials));
}

TEST(Decode, GarbageGivesNoCandidate) {
    const AwtpCode code(reference());
    Rng rng(9);
    std::size_t messages = 0;
    for (int i = 0; i < 200; ++i) {
        FoldedWord y;
        for (int j = 0; j < 6; ++j) y.symbols.push_back(code.field().uniform_vector(rng, 6));
        messages += awtp_decode(code, y).ok();
    }
    // a random word decodes only if a list point happens to be a valid padded AMD codeword
    EXPECT_LE(messages, 2u);
}

TEST(Decode, RandomSelectMode) {
    // a unique valid candidate is returned as is, never flagged as a random pick
    const AwtpCode code(reference());
    Rng rng(10);
    const auto m = random_message(code, rng);
    const auto y = awtp_encode(code, m, rng);
    DecodeOptions opts;
    opts.random_select = true;
    opts.select_seed = 3;
    const DecodeOutcome out = awtp_decode(code, y, opts);
    EXPECT_TRUE(out.ok());
    EXPECT_FALSE(out.randomly_selected);
    EXPECT_EQ(out.message, m);
}

TEST(Decode, ErrorBoundFormula) {
    const AwtpCode code(reference());
    EXPECT_EQ(code.forgery_bound(), Rational(3, 37));
    EXPECT_EQ(code.decoding_error_bound(2), Rational(6, 37));
    EXPECT_EQ(code.decoding_error_bound(100), Rational(1));
}
