#pragma once

#include "pnls/dynamics.hpp"
#include "pnls/resonance.hpp"

#include <vector>

namespace pnls {

// Theta(t) = ((p+1)/(4 pi)) int_0^t int |u|^{p-1} dx ds by the trapezoid rule.
struct PhaseState {
    double theta = 0.0;
    double last_integrand = 0.0;
    Sign sign = Sign::defocusing;
    int p = 5;
};

// -1 for focusing, +1 for defocusing: v = e^{i sigma Theta} u.
inline double gauge_sigma(Sign s) { return -sign_value(s); }

double phase_integrand(const SpectralField& field, int p);
PhaseState initial_phase(const SpectralField& u0, const EquationParams& params);
PhaseState phase_step(const PhaseState& state, const SpectralField& field, double dt);
cplx gauge_factor(const PhaseState& state);
cplx gauge_factor(double theta, Sign sign);

SpectralField to_gauge(const SpectralField& field, const PhaseState& state);
SpectralField from_gauge(const SpectralField& field, const PhaseState& state);

enum class NonlinearPath { closed_form, direct_split };

// v_t = -(i k^2 + gamma) v + i sign (N(v) - R1(v)) - i e^{i sigma theta} f.
SpectralField v_rhs(const SpectralField& v, const EquationParams& params, double theta = 0.0,
                    NonlinearPath path = NonlinearPath::closed_form, const DirectSumLimits& limits = {});

struct GaugedTrajectory {
    Trajectory traj;
    std::vector<double> theta;  // one per snapshot
};

// Integrates the v-equation with Theta carried as an extra state component (exponential RK4).
GaugedTrajectory evolve_gauged(const SpectralField& v0, const EquationParams& params, const StepperConfig& stepper,
                               double t_end, const std::vector<Observer>& observers = {});

// Observer that accumulates Theta along a u-trajectory and keeps it at recorded times.
class PhaseTracker {
public:
    explicit PhaseTracker(const EquationParams& params);

    Observer observer();
    const PhaseState& state() const noexcept { return state_; }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<double>& theta() const noexcept { return theta_; }
    std::vector<PhaseState> recorded_states() const;

private:
    EquationParams params_;
    PhaseState state_;
    double t_prev_ = 0.0;
    std::vector<double> times_, theta_;
};

}  // namespace pnls
