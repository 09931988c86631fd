#include "pnls/dynamics.hpp"

#include "pnls/errors.hpp"
#include "pnls/integrators.hpp"

#include <cmath>

namespace pnls {

std::string to_string(Sign s) { return s == Sign::focusing ? "focusing" : "defocusing"; }

Sign parse_sign(const std::string& text) {
    if (text == "focusing" || text == "+1" || text == "1") return Sign::focusing;
    if (text == "defocusing" || text == "-1") return Sign::defocusing;
    throw ConfigError("sign must be 'focusing' or 'defocusing', got '" + text + "'");
}

std::string to_string(Scheme s) { return s == Scheme::strang_split ? "strang_split" : "exponential_rk4"; }

Scheme parse_scheme(const std::string& text) {
    if (text == "strang_split") return Scheme::strang_split;
    if (text == "exponential_rk4") return Scheme::exponential_rk4;
    throw ConfigError("scheme must be 'strang_split' or 'exponential_rk4', got '" + text + "'");
}

void EquationParams::validate() const {
    if (p < 3 || p % 2 == 0) throw ConfigError("p must be an odd integer >= 3, got " + std::to_string(p));
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and >= 0");
    if ((gamma > 0.0 || forcing) && sign != Sign::defocusing)
        throw ConfigError("damped or forced runs are defocusing only");
    if (forcing && !forcing->all_finite()) throw ConfigError("forcing has non-finite coefficients");
}

void EquationParams::validate_for(const GridSpec& grid) const {
    validate();
    grid.require_degree(p);
    if (forcing && forcing->max_mode() != grid.max_mode())
        throw DimensionError("forcing window does not match the grid");
}

SpectralField free_propagate(const SpectralField& field, double t) {
    SpectralField out(field);
    const int K = field.max_mode();
    for (int k = -K; k <= K; ++k) out[k] *= std::polar(1.0, -double(k) * k * t);
    return out;
}

SpectralField damped_propagate(const SpectralField& field, double t, double gamma) {
    if (t < 0) throw DomainError("damped propagator is defined for t >= 0 only");
    SpectralField out(field);
    const int K = field.max_mode();
    const double decay = std::exp(-gamma * t);
    for (int k = -K; k <= K; ++k) out[k] *= std::polar(decay, -double(k) * k * t);
    return out;
}

SpectralField nonlinearity(const SpectralField& field, const EquationParams& params) {
    field.grid().require_degree(params.p);
    auto u = synthesize(field);
    const int half = (params.p - 1) / 2;
    for (auto& z : u) {
        const double a2 = std::norm(z);
        double w = 1.0;
        for (int i = 0; i < half; ++i) w *= a2;
        z *= w;
    }
    return analyze(u, field.grid());
}

SpectralField time_derivative(const SpectralField& field, const EquationParams& params) {
    SpectralField out = cplx(0.0, sign_value(params.sign)) * nonlinearity(field, params);
    const int K = field.max_mode();
    for (int k = -K; k <= K; ++k) out[k] += cplx(-params.gamma, -double(k) * k) * field[k];
    if (params.forcing) out -= cplx(0.0, 1.0) * *params.forcing;
    return out;
}

double mass(const SpectralField& field) {
    double acc = 0.0;
    for (const auto& z : field.coeffs()) acc += std::norm(z);
    return GridSpec::length() * acc;
}

double gradient_square(const SpectralField& field) {
    const int K = field.max_mode();
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += double(k) * k * std::norm(field[k]);
    return GridSpec::length() * acc;
}

double energy(const SpectralField& field, const EquationParams& params) {
    field.grid().require_degree(params.p);
    return 0.5 * gradient_square(field) -
           sign_value(params.sign) / (params.p + 1) * lp_integral(field, params.p + 1);
}

std::size_t step_count(double t_end, double dt) {
    if (!(t_end > 0)) throw DomainError("t_end must be positive");
    if (!(dt > 0)) throw DomainError("dt must be positive");
    const double n = std::round(t_end / dt);
    return n < 1 ? 1 : static_cast<std::size_t>(n);
}

namespace {

std::optional<BlowUpReport> check_blowup(const SpectralField& u, double t, std::size_t step) {
    if (!u.all_finite()) return BlowUpReport{t, step, NAN, true, "non-finite coefficient"};
    const double h1 = sobolev_norm(u, 1.0);
    if (h1 > blowup_h1_limit)
        return BlowUpReport{t, step, h1, false, "H^1 norm " + std::to_string(h1) + " exceeds limit"};
    return std::nullopt;
}

class Strang {
public:
    Strang(const GridSpec& grid, const EquationParams& params, double h)
        : params_(params), h_(h), half_(grid.modes()) {
        const int K = grid.max_mode();
        for (int k = -K; k <= K; ++k) half_[k + K] = std::polar(1.0, -double(k) * k * 0.5 * h);
    }

    void step(SpectralField& u) const {
        auto& c = u.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= half_[i];
        // Collocation grid: the DFT is a bijection with the window, pointwise rotation keeps l2 exactly.
        auto x = synthesize_on(u, u.grid().modes());
        const int half = (params_.p - 1) / 2;
        const double rate = sign_value(params_.sign) * h_;
        for (auto& z : x) {
            const double a2 = std::norm(z);
            double w = 1.0;
            for (int i = 0; i < half; ++i) w *= a2;
            z *= std::polar(1.0, rate * w);
        }
        u = analyze_from(x, u.grid());
        for (std::size_t i = 0; i < c.size(); ++i) u.coeffs()[i] *= half_[i];
    }

private:
    const EquationParams& params_;
    double h_;
    std::vector<cplx> half_;
};

}  // namespace

Trajectory evolve(const SpectralField& u0, const EquationParams& params, const StepperConfig& stepper, double t_end,
                  const std::vector<Observer>& observers) {
    params.validate_for(u0.grid());
    if (stepper.record_every < 1) throw ConfigError("record_every must be >= 1");
    if (stepper.scheme == Scheme::strang_split && !params.conservative())
        throw ConfigError("strang_split requires gamma = 0 and no forcing");

    const std::size_t n = step_count(t_end, stepper.dt);
    const double h = t_end / static_cast<double>(n);
    const GridSpec grid = u0.grid();
    const int K = grid.max_mode();

    Trajectory traj;
    traj.dt = h;
    traj.steps = n;
    traj.snapshots.push_back({0.0, u0});
    for (const auto& obs : observers) obs({0.0, 0, true}, u0);

    SpectralField u = u0;
    std::optional<Strang> strang;
    std::optional<Etdrk4> etd;
    NonlinearRhs rhs;
    if (stepper.scheme == Scheme::strang_split) {
        strang.emplace(grid, params, h);
    } else {
        std::vector<cplx> L(grid.modes());
        for (int k = -K; k <= K; ++k) L[k + K] = cplx(-params.gamma, -double(k) * k);
        etd.emplace(std::move(L), h);
        const cplx is(0.0, sign_value(params.sign));
        rhs = [&params, grid, is](double, const State& s, State& out) {
            SpectralField w(grid, s);
            SpectralField nl = nonlinearity(w, params);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = is * nl.coeffs()[i];
            if (params.forcing) {
                const auto& f = params.forcing->coeffs();
                for (std::size_t i = 0; i < out.size(); ++i) out[i] -= cplx(0.0, 1.0) * f[i];
            }
        };
    }

    for (std::size_t step = 1; step <= n; ++step) {
        const double t_prev = h * static_cast<double>(step - 1);
        if (strang) {
            strang->step(u);
        } else {
            etd->step(u.coeffs(), t_prev, rhs);
        }
        const double t = step == n ? t_end : h * static_cast<double>(step);
        if (auto b = check_blowup(u, t, step)) {
            traj.blowup = b;
            traj.steps = step;
            traj.snapshots.push_back({t, u});
            return traj;
        }
        const bool recorded = step % static_cast<std::size_t>(stepper.record_every) == 0 || step == n;
        if (recorded) traj.snapshots.push_back({t, u});
        for (const auto& obs : observers) obs({t, step, recorded}, u);
    }
    return traj;
}

}  // namespace pnls
