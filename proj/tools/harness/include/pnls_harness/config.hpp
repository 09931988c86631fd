#pragma once

#include <pnls/pnls.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pnls::harness {

enum class Command { simulate, smoothing, resonance, attractor, report };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct ForcingMode {
    int k = 0;
    cplx value;
};

// One field per config key. Section and key names match the INI file.
struct RunConfig {
    // [grid]
    int max_mode = 32;
    std::optional<Rational> pad_factor;

    // [equation]
    int p = 5;
    Sign sign = Sign::defocusing;
    double gamma = 0.0;
    std::vector<ForcingMode> forcing;

    // [stepper]
    StepperConfig stepper;

    // [experiment]
    std::string initial = "random_sobolev";  // plane_wave | random_sobolev | bump | zero
    int mode = 1;
    double amplitude = 1.0;
    double s = 0.6;
    double epsilon = 0.3;
    double delta_rough = 0.05;
    std::uint64_t seed = 1;
    int seeds = 1;
    double t_end = 1.0;
    int box = 20;
    int split_fields = 100;
    std::vector<double> ensemble_h1{1.0, 5.0, 10.0};
    double agreement_tolerance = 0.05;
    double window = 0.5;
    bool normal_form = false;
    bool global_smoothing = true;

    // [constants]
    CaseConstants constants;

    // [output]
    std::string dir = "runs";
    bool dumps = false;

    GridSpec grid() const;
    EquationParams equation(const GridSpec& grid) const;
    SpectralField initial_data(const GridSpec& grid, std::uint64_t seed_value, double scale) const;

    nlohmann::json to_json() const;
};

// Reads an INI file. Unknown sections or keys and malformed values throw SchemaError naming the
// field path, e.g. "equation.p".
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// Command-specific checks, also reported as SchemaError with the offending field path.
void validate_for(const RunConfig& cfg, Command command);

}  // namespace pnls::harness
