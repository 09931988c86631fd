#pragma once

#include "pnls/diagnostics.hpp"
#include "pnls/dynamics.hpp"
#include "pnls/gauge.hpp"

#include <string>
#include <vector>

namespace pnls {

// 1/2 ||u_x||^2 + 1/(p+1) ||u||_{p+1}^{p+1}.
double positive_energy(const SpectralField& field, int p);

// Derivative of samples f(t) by three-point formulas (second order on non-uniform spacing).
// Interior points use the centred stencil; endpoints use one-sided stencils when requested.
std::vector<double> three_point_derivative(const std::vector<double>& t, const std::vector<double>& f,
                                           bool include_endpoints);

// d/dt (1/2 mass) against -gamma mass - int Im(u conj f). Columns t, lhs, dissipation, forcing, residual.
DiagnosticSeries mass_dissipation_residual(const std::vector<Snapshot>& traj, const EquationParams& params,
                                           bool include_endpoints = false);
// d/dt E+ against -gamma(||u_x||^2 + ||u||_{p+1}^{p+1}) - int Im(u_x conj f_x) - int Im(|u|^{p-1} u conj f).
DiagnosticSeries energy_dissipation_residual(const std::vector<Snapshot>& traj, const EquationParams& params,
                                             bool include_endpoints = false);
// max |residual| / max(|dissipation| + |forcing|).
double relative_residual(const DiagnosticSeries& series);

SpectralField forced_gauge(const SpectralField& f, const PhaseState& state);
// G_k = f_k / (-k^2 + i gamma).
SpectralField apply_G(const SpectralField& f, double gamma);

struct EnsembleMember {
    std::string id;
    SpectralField u0;
};

struct ForcedRunConfig {
    EquationParams params;
    StepperConfig stepper;
    double horizon = 40.0;
    std::vector<EnsembleMember> ensemble;
    double agreement_tolerance = 0.05;
    double epsilon = 0.3;  // H^{1+eps} column of the member series
    int threads = 1;

    void validate() const;
};

enum MemberFlags : int { flag_ok = 0, flag_blowup = 1, flag_spread = 2, flag_not_settled = 4 };
std::string describe_flags(int flags);

struct MemberResult {
    std::string id;
    double u0_norm = 0.0;
    double longtime_H1_max = 0.0;
    double settle_time = 0.0;
    int flags = flag_ok;
    // t, H1_u, mass, energy, mass_residual, energy_residual, H1eps_diff
    DiagnosticSeries series;
    std::vector<Snapshot> late;  // snapshots from the final quarter of the horizon
};

struct SweepReport {
    double R_star = 0.0;
    double T_star = 0.0;
    double spread = 0.0;  // (max - min) / max of the long-time maxima
    bool agree = false;
    std::vector<MemberResult> members;

    // member_id (ensemble index), u0_norm, longtime_H1_max, R_star, flags (bit mask).
    DiagnosticSeries summary() const;
};

SweepReport absorbing_sweep(const ForcedRunConfig& config);

struct GlobalSmoothingReport {
    DiagnosticSeries series;   // t, H1eps_diff, running_max
    DiagnosticSeries windows;  // j, t_start, increment, weight
    double telescoped_bound = 0.0;
    double final_difference = 0.0;
    // (max over [0, H] - max over [0, H/2]) / max over [0, H/2] of the running maximum.
    double final_half_growth = 0.0;
};

// v_traj is the gauged trajectory; window increments need snapshots at multiples of window.
GlobalSmoothingReport global_smoothing_check(const std::vector<Snapshot>& v_traj, const SpectralField& u0,
                                             double gamma, double epsilon, double window = 0.5);

// Pairwise H^1 distances of the given snapshots. Columns i, j, t_i, t_j, H1_distance.
DiagnosticSeries omega_limit_distances(const std::vector<Snapshot>& snapshots);

}  // namespace pnls
