#pragma once

#include "pnls/spectral.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pnls {

// The +/- in front of |u|^{p-1}u.
enum class Sign : int { focusing = +1, defocusing = -1 };

inline double sign_value(Sign s) { return static_cast<double>(static_cast<int>(s)); }
std::string to_string(Sign s);
Sign parse_sign(const std::string& text);

// i u_t + u_xx + sign |u|^{p-1} u + i gamma u = f
struct EquationParams {
    int p = 5;
    Sign sign = Sign::defocusing;
    double gamma = 0.0;
    std::optional<SpectralField> forcing;

    bool conservative() const { return gamma == 0.0 && !forcing; }
    // Throws ConfigError on even p, p < 3, negative gamma, or damping/forcing with focusing sign.
    void validate() const;
    void validate_for(const GridSpec& grid) const;
};

enum class Scheme { strang_split, exponential_rk4 };
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);

struct StepperConfig {
    double dt = 1e-4;
    Scheme scheme = Scheme::exponential_rk4;
    int record_every = 1;
};

SpectralField free_propagate(const SpectralField& field, double t);
SpectralField damped_propagate(const SpectralField& field, double t, double gamma);

// Coefficients of |u|^{p-1} u on the window, by padded physical-space multiplication.
SpectralField nonlinearity(const SpectralField& field, const EquationParams& params);

// u_t = -(i k^2 + gamma) u + i sign N(u) - i f.
SpectralField time_derivative(const SpectralField& field, const EquationParams& params);

double mass(const SpectralField& field);
// 1/2 integral |u_x|^2 - sign/(p+1) integral |u|^{p+1}.
double energy(const SpectralField& field, const EquationParams& params);
// integral |u_x|^2 = 2 pi sum k^2 |u_k|^2.
double gradient_square(const SpectralField& field);

struct Snapshot {
    double t;
    SpectralField u;
};

struct StepInfo {
    double t;
    std::size_t step;
    bool recorded;
};

// Called at t = 0 and after every step with the current state.
using Observer = std::function<void(const StepInfo&, const SpectralField&)>;

struct BlowUpReport {
    double t = 0.0;
    std::size_t step = 0;
    double h1_norm = 0.0;
    bool non_finite = false;
    std::string message;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::optional<BlowUpReport> blowup;
    double dt = 0.0;
    std::size_t steps = 0;

    const Snapshot& back() const { return snapshots.back(); }
};

inline constexpr double blowup_h1_limit = 1e6;

// Number of steps is round(t_end/dt); the step is then t_end/steps exactly.
std::size_t step_count(double t_end, double dt);

Trajectory evolve(const SpectralField& u0, const EquationParams& params, const StepperConfig& stepper, double t_end,
                  const std::vector<Observer>& observers = {});

}  // namespace pnls
