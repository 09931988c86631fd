#include "pnls/gauge.hpp"

#include "pnls/errors.hpp"
#include "pnls/integrators.hpp"

#include <cmath>

namespace pnls {

namespace {
double rate_constant(int p) { return (p + 1) / (2.0 * GridSpec::length()); }
}  // namespace

double phase_integrand(const SpectralField& field, int p) { return lp_integral(field, p - 1); }

PhaseState initial_phase(const SpectralField& u0, const EquationParams& params) {
    PhaseState s;
    s.sign = params.sign;
    s.p = params.p;
    s.last_integrand = phase_integrand(u0, params.p);
    return s;
}

PhaseState phase_step(const PhaseState& state, const SpectralField& field, double dt) {
    if (!(dt > 0)) throw DomainError("phase_step needs dt > 0");
    PhaseState next = state;
    const double now = phase_integrand(field, state.p);
    next.theta += rate_constant(state.p) * dt * 0.5 * (now + state.last_integrand);
    next.last_integrand = now;
    return next;
}

cplx gauge_factor(double theta, Sign sign) { return std::polar(1.0, gauge_sigma(sign) * theta); }
cplx gauge_factor(const PhaseState& state) { return gauge_factor(state.theta, state.sign); }

SpectralField to_gauge(const SpectralField& field, const PhaseState& state) { return gauge_factor(state) * field; }

SpectralField from_gauge(const SpectralField& field, const PhaseState& state) {
    return std::conj(gauge_factor(state)) * field;
}

SpectralField v_rhs(const SpectralField& v, const EquationParams& params, double theta, NonlinearPath path,
                    const DirectSumLimits& limits) {
    params.validate_for(v.grid());
    SpectralField reduced(v.grid());
    if (path == NonlinearPath::direct_split) {
        auto parts = split_nonlinearity(v, params, limits);
        reduced = parts.R2 + parts.NR;
    } else {
        reduced = nonlinearity(v, params) - r1_closed_form(v, params);
    }
    SpectralField out = cplx(0.0, sign_value(params.sign)) * reduced;
    const int K = v.max_mode();
    for (int k = -K; k <= K; ++k) out[k] += cplx(-params.gamma, -double(k) * k) * v[k];
    if (params.forcing) out -= cplx(0.0, 1.0) * gauge_factor(theta, params.sign) * *params.forcing;
    return out;
}

GaugedTrajectory evolve_gauged(const SpectralField& v0, const EquationParams& params, const StepperConfig& stepper,
                               double t_end, const std::vector<Observer>& observers) {
    params.validate_for(v0.grid());
    if (stepper.scheme != Scheme::exponential_rk4) throw ConfigError("the v-equation is integrated by exponential_rk4");
    if (stepper.record_every < 1) throw ConfigError("record_every must be >= 1");
    const GridSpec grid = v0.grid();
    const int K = grid.max_mode();
    const std::size_t n = step_count(t_end, stepper.dt);
    const double h = t_end / static_cast<double>(n);
    const std::size_t m = grid.modes();

    std::vector<cplx> L(m + 1, cplx(0.0, 0.0));
    for (int k = -K; k <= K; ++k) L[k + K] = cplx(-params.gamma, -double(k) * k);
    Etdrk4 etd(std::move(L), h);

    const cplx is(0.0, sign_value(params.sign));
    const double rate = rate_constant(params.p);
    NonlinearRhs rhs = [&](double, const State& s, State& out) {
        SpectralField v(grid, State(s.begin(), s.begin() + static_cast<long>(m)));
        const double integrand = phase_integrand(v, params.p);
        SpectralField nl = nonlinearity(v, params);
        const double r1 = rate * integrand;
        for (std::size_t i = 0; i < m; ++i) out[i] = is * (nl.coeffs()[i] - r1 * v.coeffs()[i]);
        if (params.forcing) {
            const cplx g = gauge_factor(s[m].real(), params.sign);
            for (std::size_t i = 0; i < m; ++i) out[i] -= cplx(0.0, 1.0) * g * params.forcing->coeffs()[i];
        }
        out[m] = cplx(rate * integrand, 0.0);
    };

    GaugedTrajectory g;
    g.traj.dt = h;
    g.traj.steps = n;
    g.traj.snapshots.push_back({0.0, v0});
    g.theta.push_back(0.0);
    for (const auto& obs : observers) obs({0.0, 0, true}, v0);

    State s(v0.coeffs());
    s.push_back(cplx(0.0, 0.0));
    for (std::size_t step = 1; step <= n; ++step) {
        etd.step(s, h * static_cast<double>(step - 1), rhs);
        const double t = step == n ? t_end : h * static_cast<double>(step);
        SpectralField v(grid, State(s.begin(), s.begin() + static_cast<long>(m)));
        if (!v.all_finite() || sobolev_norm(v, 1.0) > blowup_h1_limit) {
            g.traj.blowup = BlowUpReport{t, step, sobolev_norm(v, 1.0), !v.all_finite(), "v-flow blow-up"};
            g.traj.steps = step;
            g.traj.snapshots.push_back({t, v});
            g.theta.push_back(s[m].real());
            return g;
        }
        const bool recorded = step % static_cast<std::size_t>(stepper.record_every) == 0 || step == n;
        if (recorded) {
            g.traj.snapshots.push_back({t, v});
            g.theta.push_back(s[m].real());
        }
        for (const auto& obs : observers) obs({t, step, recorded}, v);
    }
    return g;
}

PhaseTracker::PhaseTracker(const EquationParams& params) : params_(params) {
    state_.sign = params.sign;
    state_.p = params.p;
}

Observer PhaseTracker::observer() {
    return [this](const StepInfo& info, const SpectralField& u) {
        if (info.step == 0) {
            state_ = initial_phase(u, params_);
            t_prev_ = info.t;
        } else {
            state_ = phase_step(state_, u, info.t - t_prev_);
            t_prev_ = info.t;
        }
        if (info.recorded) {
            times_.push_back(info.t);
            theta_.push_back(state_.theta);
        }
    };
}

std::vector<PhaseState> PhaseTracker::recorded_states() const {
    std::vector<PhaseState> out;
    for (double th : theta_) {
        PhaseState s = state_;
        s.theta = th;
        out.push_back(s);
    }
    return out;
}

}  // namespace pnls
