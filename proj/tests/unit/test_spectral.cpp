#include "oracles.hpp"
#include "pnls/errors.hpp"
#include "pnls/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pnls;

namespace {

double max_rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return num / den;
}

}  // namespace

TEST(GridSpec, SampleCountIsFiveSmoothAndPadded) {
    EXPECT_EQ(GridSpec::for_exponent(512, 5).samples(), 3125u);
    EXPECT_EQ(GridSpec::for_exponent(256, 5).samples(), 1600u);
    EXPECT_EQ(GridSpec::for_exponent(8, 5).samples(), 54u);  // 3*17 = 51 -> 54
    for (int K : {1, 7, 33, 100}) {
        const auto g = GridSpec::for_exponent(K, 7);
        EXPECT_GE(g.samples(), 4u * (2 * K + 1));
        EXPECT_EQ(next_5smooth(g.samples()), g.samples());
    }
}

TEST(GridSpec, RejectsBadInput) {
    EXPECT_THROW(GridSpec(0, Rational(3)), DomainError);
    EXPECT_THROW(GridSpec(4, Rational(0)), DomainError);
    GridSpec g(8, Rational(2));
    EXPECT_TRUE(g.resolves_degree(3));
    EXPECT_FALSE(g.resolves_degree(5));
    EXPECT_THROW(g.require_degree(5), ConfigError);
}

TEST(Transforms, ConstantAndSingleMode) {
    const auto g = GridSpec::for_exponent(6, 5);
    auto u = synthesize(plane_wave(g, 0, 1.0));
    for (const auto& z : u) EXPECT_NEAR(std::abs(z - cplx(1, 0)), 0.0, 1e-14);

    const cplx A(0.7, -0.2);
    u = synthesize(plane_wave(g, 1, A));
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = 2 * std::numbers::pi * double(j) / double(u.size());
        EXPECT_NEAR(std::abs(u[j] - A * std::polar(1.0, x)), 0.0, 1e-14);
    }
}

TEST(Transforms, MatchesDirectSummation) {
    const auto g = GridSpec::for_exponent(12, 5);
    const auto f = oracle::random_field(g, 11);
    EXPECT_LT(max_rel_diff(synthesize(f), oracle::naive_samples(f, g.samples())), 1e-13);
}

TEST(Transforms, RoundTripAndParseval) {
    for (int K : {8, 64, 256}) {
        const auto g = GridSpec::for_exponent(K, 5);
        const auto f = oracle::random_field(g, 100 + K);
        const auto u = synthesize(f);
        const auto back = analyze(u, g);
        EXPECT_LT(max_rel_diff(back.coeffs(), f.coeffs()), 1e-12) << "K=" << K;

        double phys = 0, spec = 0;
        for (const auto& z : u) phys += std::norm(z);
        phys /= double(u.size());
        for (const auto& z : f.coeffs()) spec += std::norm(z);
        EXPECT_NEAR(phys / spec, 1.0, 1e-12) << "K=" << K;
    }
}

TEST(Transforms, LengthMismatchIsDimensionError) {
    const auto g = GridSpec::for_exponent(4, 5);
    EXPECT_THROW(analyze(std::vector<cplx>(g.samples() + 1), g), DimensionError);
    EXPECT_THROW(SpectralField(g, std::vector<cplx>(3)), DimensionError);
}

TEST(SobolevNorm, SingleModeAndParseval) {
    const auto g = GridSpec::for_exponent(5, 5);
    const double A = 1.7;
    for (double s : {-1.0, 0.0, 0.6, 2.5})
        EXPECT_NEAR(sobolev_norm(plane_wave(g, 1, A), s), std::pow(2.0, s / 2) * A, 1e-14);

    const auto f = oracle::random_field(g, 3);
    double l2 = 0;
    for (const auto& z : f.coeffs()) l2 += std::norm(z);
    EXPECT_NEAR(sobolev_norm(f, 0), std::sqrt(l2), 1e-14);
}

TEST(SobolevNorm, InverseBracketField) {
    for (int K : {3, 16, 40}) {
        const auto g = GridSpec::for_exponent(K, 5);
        SpectralField f(g);
        for (int k = -K; k <= K; ++k) f[k] = 1.0 / std::sqrt(1.0 + double(k) * k);
        EXPECT_NEAR(sobolev_norm(f, 1.0), std::sqrt(2.0 * K + 1), 1e-12);
    }
}

TEST(SobolevNorm, MonotoneInS) {
    const auto g = GridSpec::for_exponent(20, 5);
    const auto f = oracle::random_field(g, 5);
    double prev = 0;
    for (double s = -2; s <= 3; s += 0.25) {
        const double n = sobolev_norm(f, s);
        EXPECT_GE(n, prev);
        prev = n;
    }
}

TEST(LpNorm, ClosedForms) {
    const auto g = GridSpec::for_exponent(4, 5);
    const double A = 0.8;
    for (double q : {1.0, 2.0, 3.5, 4.0, 6.0})
        EXPECT_NEAR(lp_norm(plane_wave(g, 1, A), q), std::pow(2 * std::numbers::pi, 1 / q) * A, 1e-13);
    EXPECT_NEAR(lp_norm(plane_wave(g, 0, 1.0), 2), std::sqrt(2 * std::numbers::pi), 1e-14);

    SpectralField c(g);
    c[1] = c[-1] = 0.5;
    EXPECT_NEAR(lp_norm(c, 4), std::pow(2 * std::numbers::pi * 3.0 / 8.0, 0.25), 1e-14);
    EXPECT_THROW(lp_norm(c, 0.5), DomainError);
}

TEST(LpNorm, ExactForQuadratureDegreesOfTheExponent) {
    const auto g = GridSpec::for_exponent(10, 5);
    const auto f = oracle::random_field(g, 21);
    for (double q : {4.0, 6.0}) {
        const double ref = oracle::naive_lp_integral(f, q, 400);
        EXPECT_NEAR(lp_integral(f, q) / ref, 1.0, 1e-12);
    }
}

TEST(ProjectBand, IdentityBandAndSingleBand) {
    const auto g = GridSpec::for_exponent(6, 5);
    const auto f = oracle::random_field(g, 8);
    const auto id = project_band(f, 0, 6);
    EXPECT_EQ(id.coeffs(), f.coeffs());

    SpectralField h(g);
    h[1] = 1;
    h[2] = 3;
    const auto b = project_band(h, 2, 2);
    for (int k = -6; k <= 6; ++k) EXPECT_EQ(b[k], k == 2 ? cplx(3, 0) : cplx(0, 0));
    EXPECT_THROW(project_band(h, 3, 2), DomainError);
}

TEST(ProjectBand, OrthogonalInEverySobolevSpace) {
    const auto g = GridSpec::for_exponent(32, 5);
    const auto f = oracle::random_field(g, 9);
    for (int N : {0, 3, 16, 31}) {
        const auto hi = project_high(f, N);
        const auto lo = project_band(f, 0, N);
        const auto twice = project_high(hi, N);
        EXPECT_EQ(twice.coeffs(), hi.coeffs());
        for (double s : {0.0, 0.9, 2.0}) {
            const double lhs = std::pow(sobolev_norm(hi, s), 2) + std::pow(sobolev_norm(lo, s), 2);
            EXPECT_NEAR(lhs / std::pow(sobolev_norm(f, s), 2), 1.0, 1e-13);
        }
    }
}

TEST(Rational, ParseAndCompare) {
    EXPECT_EQ(Rational::parse("1/16"), Rational(1, 16));
    EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
    EXPECT_EQ(Rational::parse("-3"), Rational(-3));
    EXPECT_EQ(Rational(4, -8), Rational(-1, 2));
    EXPECT_THROW(Rational::parse("1/0"), DomainError);
    EXPECT_THROW(Rational::parse("abc"), DomainError);
    EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
    EXPECT_TRUE(at_least(7, Rational(1, 2), 14));
    EXPECT_FALSE(at_least(6, Rational(1, 2), 13));
}
