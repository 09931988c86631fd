#pragma once

#include "pnls/diagnostics.hpp"
#include "pnls/dynamics.hpp"
#include "pnls/resonance.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pnls {

// (p-3)/(2(p-1)); smoothing is claimed for s above it.
double smoothing_threshold(int p);
// min((p-1)s - (p-3)/2, s - (p-5)/(2(p-1)), 1); throws DomainError below the threshold.
double epsilon_max(int p, double s);

struct SmoothingParams {
    int p = 5;
    double s = 0.6;
    double epsilon = 0.3;
    double delta_rough = 0.05;
    std::uint64_t seed = 1;

    void validate() const;
};

// u_k = amplitude <k>^{-s-1/2-delta} e^{i theta_k}; theta_k depends only on (seed, k),
// so the low modes of a larger window agree with a smaller one.
SpectralField random_sobolev_data(double s, double delta_rough, std::uint64_t seed, const GridSpec& grid,
                                  double amplitude);

inline const std::vector<int> band_ladder{16, 32, 64, 128};

// D(t) = u(t) - e^{-i sigma Theta} W_t u0, sigma = gauge_sigma(sign).
SpectralField smoothing_residual(const SpectralField& u, const SpectralField& u0, double t, double theta, Sign sign);

// Columns t, theta, Hs_u, Hs_eps_D, Hs_D, band_N16_D .. band_N128_D, slope_D, mass, energy.
// Band columns are ||P_{>N} D||_{H^s}. slope_D is the tail fit of D over [4, K], reported as 0
// when D has fewer than three non-empty dyadic bins (t = 0, single-mode data).
DiagnosticSeries smoothing_difference(const std::vector<Snapshot>& u_traj, const std::vector<double>& phase_times,
                                      const std::vector<double>& phase_theta, const SpectralField& u0,
                                      const EquationParams& params, double s, double epsilon);

// z = v - W_t u0 - sign T[W_t u0, v, ..., v]. Columns t, Hs_eps_z, Hs_eps_T.
DiagnosticSeries extract_z(const std::vector<Snapshot>& v_traj, const SpectralField& u0,
                           const EquationParams& params, const CaseConstants& constants, double s, double epsilon,
                           const DirectSumLimits& limits = {});

// Nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// W_t u0 + i sign int_0^t W_{t-s} N(W_s u0) ds with n_quad Gauss-Legendre nodes.
SpectralField picard_oracle(const SpectralField& u0, const EquationParams& params, double t, int n_quad = 16);

// Least-squares slope of log|u_k| against log<k> over dyadic bins [2^j, 2^{j+1}) within
// [k_min, k_max]; bins average both quantities in the log domain and skip zero coefficients.
double tail_slope(const SpectralField& field, int k_min, int k_max);

}  // namespace pnls
