#include "oracles.hpp"
#include "pnls/errors.hpp"
#include "pnls/resonance.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pnls;

namespace {

EquationParams quintic() {
    EquationParams p;
    p.p = 5;
    return p;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// conj(f_{-k})
SpectralField reflect(const SpectralField& f) {
    SpectralField r(f.grid());
    const int K = f.max_mode();
    for (int k = -K; k <= K; ++k) r[k] = std::conj(f[-k]);
    return r;
}

}  // namespace

TEST(Phi, Examples) {
    EXPECT_EQ(phi(FrequencyTuple::from_internal({1, 0, 0, 0, 0})), 0);
    EXPECT_EQ(phi(FrequencyTuple::from_internal({7, 7, 7, 7, 7})), 0);
    const auto t = FrequencyTuple::from_internal({3, 1, 2, 1, 1});
    EXPECT_EQ(t.k, 4);
    EXPECT_EQ(phi(t), 4);
    FrequencyTuple bad{5, {3, 1, 2, 1, 1}};
    EXPECT_THROW(phi(bad), DomainError);
}

TEST(Classify, Examples) {
    for (const auto& c : {CaseConstants{}, CaseConstants::unit_c_C()}) {
        auto l = classify(FrequencyTuple::from_internal({100, 1, 1, 1, 1}), c);
        EXPECT_TRUE(l.A);

        l = classify(FrequencyTuple::from_internal({10, 10, 10, 10, 10}), c);
        EXPECT_FALSE(l.A);
        EXPECT_TRUE(l.C);

        const auto t = FrequencyTuple::from_internal({100, 1, 2, 1, 1});
        EXPECT_EQ(t.k, 101);
        EXPECT_EQ(phi(t), 198);
        l = classify(t, c);
        EXPECT_FALSE(l.A);
        EXPECT_TRUE(l.B);
        EXPECT_FALSE(l.C);
    }
}

TEST(Classify, ZeroPhiTupleOnlyCoveredBySmallCaseCConstant) {
    // k = -6, Phi = 0, (k3*)^2 = 4, k1* = 7.
    const auto t = FrequencyTuple::from_internal({-7, -3, 0, 2, 0});
    EXPECT_EQ(t.k, -6);
    EXPECT_EQ(phi(t), 0);
    EXPECT_FALSE(classify(t, CaseConstants::unit_c_C()).covered());
    EXPECT_TRUE(classify(t, CaseConstants{}).C);
}

TEST(VerifyDecomposition, MatchesBruteForceEnumeration) {
    for (int box : {2, 4, 6}) {
        for (const auto& c : {CaseConstants{}, CaseConstants::unit_c_C()}) {
            const auto rep = verify_decomposition(box, 5, c);
            const auto ref = oracle::brute_cases(box, c.c_B.value(), c.c_C.value(), c.r_comp.value());
            EXPECT_EQ(rep.violations, ref.violations) << "box " << box << " c_C " << c.c_C.str();
            ASSERT_TRUE(rep.min_ratio);
            EXPECT_DOUBLE_EQ(rep.min_ratio->value(), ref.min_ratio);
            EXPECT_EQ(rep.tuples, static_cast<std::int64_t>(std::pow(2 * box + 1, 5)));
        }
    }
    EXPECT_EQ(verify_decomposition(2, 5, CaseConstants{}).violations, 0);
}

TEST(VerifyDecomposition, UnitCaseCConstantFailsAtBoxEight) {
    const auto rep = verify_decomposition(8, 5, CaseConstants::unit_c_C());
    EXPECT_EQ(rep.violations, 96);
    ASSERT_TRUE(rep.first_violation);
    EXPECT_FALSE(classify(*rep.first_violation, CaseConstants::unit_c_C()).covered());
}

TEST(VerifyDecomposition, DefaultsHoldAndAreSharpUpToFactor) {
    const CaseConstants c;
    const auto rep = verify_decomposition(12, 5, c);
    EXPECT_EQ(rep.violations, 0);
    ASSERT_TRUE(rep.min_ratio);
    EXPECT_GE(*rep.min_ratio, c.c_B);

    CaseConstants inflated = c;
    inflated.c_B = *rep.min_ratio * Rational(2);
    EXPECT_GT(verify_decomposition(12, 5, inflated).violations, 0);
}

TEST(VerifyDecomposition, ThreadCountDoesNotChangeReport) {
    const auto a = verify_decomposition(7, 5, CaseConstants::unit_c_C(), {1e9, 1});
    const auto b = verify_decomposition(7, 5, CaseConstants::unit_c_C(), {1e9, 3});
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.min_ratio, b.min_ratio);
    EXPECT_EQ(a.first_violation->internal, b.first_violation->internal);
}

TEST(VerifyDecomposition, RefusesInfeasibleBox) {
    try {
        verify_decomposition(400, 5, CaseConstants{});
        FAIL() << "expected CostError";
    } catch (const CostError& e) {
        EXPECT_GT(e.estimate(), 1e13);
    }
}

TEST(SplitNonlinearity, SingleMode) {
    const auto g = GridSpec::for_exponent(4, 5);
    const double A = 0.7;
    const auto s = split_nonlinearity(plane_wave(g, 1, A), quintic());
    EXPECT_NEAR(s.R1[1].real(), 3 * std::pow(A, 5), 1e-14);
    EXPECT_NEAR(s.R2[1].real(), -2 * std::pow(A, 5), 1e-14);
    for (int k = -4; k <= 4; ++k) EXPECT_EQ(s.NR[k], cplx(0, 0));
}

TEST(SplitNonlinearity, ZeroField) {
    const auto g = GridSpec::for_exponent(4, 5);
    const auto s = split_nonlinearity(SpectralField(g), quintic());
    EXPECT_EQ(sobolev_norm(s.R1, 0) + sobolev_norm(s.R2, 0) + sobolev_norm(s.NR, 0), 0.0);
}

TEST(SplitNonlinearity, AgreesWithBruteForceAndFft) {
    const auto g = GridSpec::for_exponent(8, 5);
    for (std::uint64_t seed : {31u, 32u}) {
        const auto f = oracle::random_field(g, seed);
        const auto s = split_nonlinearity(f, quintic());
        const auto ref = oracle::brute_split(f);
        EXPECT_LT(max_abs_diff(s.NR.coeffs(), ref.nonresonant), 1e-10);
        EXPECT_LT(max_abs_diff((s.R1 + s.R2).coeffs(), ref.resonant), 1e-10);
        EXPECT_LT(max_abs_diff((s.R1 + s.R2 + s.NR).coeffs(), nonlinearity(f, quintic()).coeffs()), 1e-10);
    }

    SpectralField two(GridSpec::for_exponent(2, 5));
    two[1] = two[-1] = 0.4;
    two[2] = two[-2] = -0.25;
    const auto s = split_nonlinearity(two, quintic());
    EXPECT_LT(max_abs_diff((s.R1 + s.R2 + s.NR).coeffs(), nonlinearity(two, quintic()).coeffs()), 1e-12);
}

TEST(SplitNonlinearity, ClosedFormR1CountsOddSlotMultiplicity) {
    const auto g = GridSpec::for_exponent(5, 5);
    const auto f = oracle::random_field(g, 41);
    std::vector<cplx> ref(11);
    oracle::for_each_quintic(5, [&](int k1, int k2, int k3, int k4, int k5, int k) {
        if (std::abs(k) > 5) return;
        const int mult = (k1 == k) + (k3 == k) + (k5 == k);
        if (mult) ref[k + 5] += double(mult) * f[k1] * std::conj(f[k2]) * f[k3] * std::conj(f[k4]) * f[k5];
    });
    EXPECT_LT(max_abs_diff(r1_closed_form(f, quintic()).coeffs(), ref), 1e-10);
}

TEST(SplitNonlinearity, CostGuardAndExponentSupport) {
    const auto g = GridSpec::for_exponent(40, 5);
    EXPECT_THROW(split_nonlinearity(SpectralField(g), quintic()), CostError);
    EquationParams p7;
    p7.p = 7;
    EXPECT_THROW(split_nonlinearity(SpectralField(GridSpec::for_exponent(4, 7)), p7), ConfigError);
}

TEST(HighLow, SingleModeAndInfiniteGapGiveZero) {
    const auto g = GridSpec::for_exponent(16, 5);
    const auto u = plane_wave(g, 1, 1.0);
    EXPECT_EQ(sobolev_norm(apply_HLB(u, u, quintic(), {}), 0), 0.0);
    EXPECT_EQ(sobolev_norm(apply_T(u, u, quintic(), {}), 0), 0.0);

    const auto f = oracle::random_field(g, 3);
    CaseConstants wide;
    wide.gap = Rational(1000);
    EXPECT_EQ(sobolev_norm(apply_HLB(f, f, quintic(), wide), 0), 0.0);
}

TEST(HighLow, MatchesRestrictedBruteForce) {
    const auto g = GridSpec::for_exponent(16, 5);
    const auto first = plane_wave(g, 12, 1.0);
    const auto rest = project_band(oracle::random_field(g, 17), 0, 2);
    const CaseConstants c;
    const auto hl = apply_HLB(first, rest, quintic(), c);
    const auto ref = oracle::brute_high_low(first, rest, c.gap.value(), c.c_B.value(), false);
    EXPECT_LT(max_abs_diff(hl.coeffs(), ref), 1e-12);
    EXPECT_GT(sobolev_norm(hl, 0), 0.0);

    const auto t = apply_T(first, rest, quintic(), c);
    const auto tref = oracle::brute_high_low(first, rest, c.gap.value(), c.c_B.value(), true);
    EXPECT_LT(max_abs_diff(t.coeffs(), tref), 1e-12);
}

TEST(HighLow, GeneralInputsMatchBruteForce) {
    const auto g = GridSpec::for_exponent(6, 5);
    const auto a = oracle::random_field(g, 51), b = oracle::random_field(g, 52);
    const CaseConstants c;
    EXPECT_LT(max_abs_diff(apply_T(a, b, quintic(), c).coeffs(),
                           oracle::brute_high_low(a, b, c.gap.value(), c.c_B.value(), true)),
              1e-12);
}

TEST(HighLow, UnitWeightEqualsHighLowOperator) {
    const auto g = GridSpec::for_exponent(12, 5);
    const auto f = oracle::random_field(g, 61);
    const auto a = high_low_sum(f, f, quintic(), {}, Weighting::unit);
    const auto b = apply_HLB(f, f, quintic(), {});
    EXPECT_EQ(a.coeffs(), b.coeffs());
}

TEST(HighLow, ConjugationSymmetry) {
    const auto g = GridSpec::for_exponent(10, 5);
    const auto a = oracle::random_field(g, 71), b = oracle::random_field(g, 72);
    const auto lhs = apply_T(reflect(a), reflect(b), quintic(), {});
    const auto rhs = reflect(apply_T(a, b, quintic(), {}));
    EXPECT_LT(max_abs_diff(lhs.coeffs(), rhs.coeffs()), 1e-12);

    const auto s1 = split_nonlinearity(reflect(a), quintic());
    const auto s2 = split_nonlinearity(a, quintic());
    EXPECT_LT(max_abs_diff(s1.NR.coeffs(), reflect(s2.NR).coeffs()), 1e-12);
    EXPECT_LT(max_abs_diff(s1.R2.coeffs(), reflect(s2.R2).coeffs()), 1e-12);
}

TEST(HighLow, ThreadCountIsBitIdentical) {
    const auto g = GridSpec::for_exponent(12, 5);
    const auto f = oracle::random_field(g, 81);
    DirectSumLimits one, four;
    four.threads = 4;
    EXPECT_EQ(apply_T(f, f, quintic(), {}, one).coeffs(), apply_T(f, f, quintic(), {}, four).coeffs());
    EXPECT_EQ(split_nonlinearity(f, quintic(), one).NR.coeffs(), split_nonlinearity(f, quintic(), four).NR.coeffs());
}

TEST(HighLow, SelectedTuplesHaveBoundedWeight) {
    // On the selection |Phi| >= c_B k1* and |k| <= (1 + 4/gap) k1*, so |k|/|Phi| <= (1 + 4/gap)/c_B.
    const int K = 16;
    const CaseConstants c;
    const double bound = (1 + 4 / c.gap.value()) / c.c_B.value();
    double worst = 0;
    long long selected = 0;
    oracle::for_each_quintic(K, [&](int k1, int k2, int k3, int k4, int k5, int k) {
        if (std::abs(k) > K) return;
        const int m2 = std::max({std::abs(k2), std::abs(k3), std::abs(k4), std::abs(k5)});
        if (std::abs(k1) < 2 * std::max(m2, 1)) return;
        const long long ph = oracle::quintic_phi(k, k1, k2, k3, k4, k5);
        if (std::abs(double(ph)) < 0.5 * std::abs(k1)) return;
        ++selected;
        worst = std::max(worst, std::abs(double(k)) / std::abs(double(ph)));
    });
    EXPECT_GT(selected, 0);
    EXPECT_GT(worst, 0);
    EXPECT_LE(worst, bound);
}
