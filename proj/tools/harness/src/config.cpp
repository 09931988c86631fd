#include "pnls_harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pnls::harness {

namespace pt = boost::property_tree;

std::string to_string(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::smoothing: return "smoothing";
        case Command::resonance: return "resonance";
        case Command::attractor: return "attractor";
        case Command::report: return "report";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::simulate, Command::smoothing, Command::resonance, Command::attractor, Command::report})
        if (to_string(c) == name) return c;
    throw SchemaError("unknown command '" + name + "'");
}

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad(const std::string& field, const std::string& msg) { throw SchemaError(field + ": " + msg); }

double to_double(const std::string& field, const std::string& text) {
    double v = 0.0;
    const auto t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        bad(field, "expected a finite number, got '" + text + "'");
    return v;
}

long long to_integer(const std::string& field, const std::string& text) {
    long long v = 0;
    const auto t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) bad(field, "expected an integer, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& field, const std::string& text) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    bad(field, "expected true or false, got '" + text + "'");
}

Rational to_rational(const std::string& field, const std::string& text) {
    try {
        return Rational::parse(trim(text));
    } catch (const Error&) {
        bad(field, "expected a rational such as 1/16, got '" + text + "'");
    }
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"grid", {"max_mode", "pad_factor"}},
        {"equation", {"p", "sign", "gamma", "forcing"}},
        {"stepper", {"dt", "scheme", "record_every"}},
        {"experiment",
         {"initial", "mode", "amplitude", "s", "epsilon", "delta_rough", "seed", "seeds", "t_end", "box",
          "split_fields", "ensemble_h1", "agreement_tolerance", "window", "normal_form", "global_smoothing"}},
        {"constants", {"c_B", "c_C", "r_comp", "gap"}},
        {"output", {"dir", "dumps"}},
    };
    return s;
}

RunConfig from_tree(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) bad(section, "unknown section");
        if (!body.data().empty()) bad(section, "top-level keys are not allowed");
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) bad(section + "." + key, "unknown key");
            if (!value.empty()) bad(section + "." + key, "nested keys are not allowed");
        }
    }

    RunConfig c;
    auto get = [&](const std::string& path) -> std::optional<std::string> {
        if (const auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
        return std::nullopt;
    };
    auto integer = [&](const std::string& path, auto& out) {
        if (const auto v = get(path)) out = static_cast<std::remove_reference_t<decltype(out)>>(to_integer(path, *v));
    };
    auto real = [&](const std::string& path, double& out) {
        if (const auto v = get(path)) out = to_double(path, *v);
    };
    auto boolean = [&](const std::string& path, bool& out) {
        if (const auto v = get(path)) out = to_bool(path, *v);
    };
    auto rational = [&](const std::string& path, Rational& out) {
        if (const auto v = get(path)) out = to_rational(path, *v);
    };

    integer("grid.max_mode", c.max_mode);
    if (const auto v = get("grid.pad_factor")) c.pad_factor = to_rational("grid.pad_factor", *v);

    integer("equation.p", c.p);
    if (const auto v = get("equation.sign")) {
        try {
            c.sign = parse_sign(trim(*v));
        } catch (const Error&) {
            bad("equation.sign", "expected focusing or defocusing, got '" + *v + "'");
        }
    }
    real("equation.gamma", c.gamma);
    if (const auto v = get("equation.forcing")) {
        for (const auto& item : split_list(*v, ',')) {
            const auto parts = split_list(item, ':');
            if (parts.size() < 2 || parts.size() > 3)
                bad("equation.forcing", "expected entries k:re or k:re:im, got '" + item + "'");
            ForcingMode m;
            m.k = static_cast<int>(to_integer("equation.forcing", parts[0]));
            m.value = {to_double("equation.forcing", parts[1]),
                       parts.size() == 3 ? to_double("equation.forcing", parts[2]) : 0.0};
            c.forcing.push_back(m);
        }
    }

    real("stepper.dt", c.stepper.dt);
    if (const auto v = get("stepper.scheme")) {
        try {
            c.stepper.scheme = parse_scheme(trim(*v));
        } catch (const Error&) {
            bad("stepper.scheme", "expected strang_split or exponential_rk4, got '" + *v + "'");
        }
    }
    integer("stepper.record_every", c.stepper.record_every);

    if (const auto v = get("experiment.initial")) c.initial = trim(*v);
    integer("experiment.mode", c.mode);
    real("experiment.amplitude", c.amplitude);
    real("experiment.s", c.s);
    real("experiment.epsilon", c.epsilon);
    real("experiment.delta_rough", c.delta_rough);
    if (const auto v = get("experiment.seed")) {
        const long long seed = to_integer("experiment.seed", *v);
        if (seed < 0) bad("experiment.seed", "must be non-negative");
        c.seed = static_cast<std::uint64_t>(seed);
    }
    integer("experiment.seeds", c.seeds);
    real("experiment.t_end", c.t_end);
    integer("experiment.box", c.box);
    integer("experiment.split_fields", c.split_fields);
    if (const auto v = get("experiment.ensemble_h1")) {
        c.ensemble_h1.clear();
        for (const auto& item : split_list(*v, ',')) c.ensemble_h1.push_back(to_double("experiment.ensemble_h1", item));
    }
    real("experiment.agreement_tolerance", c.agreement_tolerance);
    real("experiment.window", c.window);
    boolean("experiment.normal_form", c.normal_form);
    boolean("experiment.global_smoothing", c.global_smoothing);

    rational("constants.c_B", c.constants.c_B);
    rational("constants.c_C", c.constants.c_C);
    rational("constants.r_comp", c.constants.r_comp);
    rational("constants.gap", c.constants.gap);

    if (const auto v = get("output.dir")) c.dir = trim(*v);
    boolean("output.dumps", c.dumps);

    // checks shared by every command
    if (c.max_mode < 1) bad("grid.max_mode", "must be >= 1");
    if (c.p < 3 || c.p % 2 == 0) bad("equation.p", "must be an odd integer >= 3, got " + std::to_string(c.p));
    if (c.pad_factor && !GridSpec(c.max_mode, *c.pad_factor).resolves_degree(c.p))
        bad("grid.pad_factor", "must be at least (p+1)/2 = " + std::to_string((c.p + 1) / 2));
    if (c.gamma < 0.0) bad("equation.gamma", "must be >= 0");
    for (const auto& m : c.forcing)
        if (std::abs(m.k) > c.max_mode) bad("equation.forcing", "mode " + std::to_string(m.k) + " exceeds grid.max_mode");
    if (!(c.stepper.dt > 0.0)) bad("stepper.dt", "must be > 0");
    if (c.stepper.record_every < 1) bad("stepper.record_every", "must be >= 1");
    if (!(c.t_end > 0.0)) bad("experiment.t_end", "must be > 0");
    if (c.initial != "plane_wave" && c.initial != "random_sobolev" && c.initial != "bump" && c.initial != "zero")
        bad("experiment.initial", "expected plane_wave, random_sobolev, bump or zero, got '" + c.initial + "'");
    if (std::abs(c.mode) > c.max_mode) bad("experiment.mode", "exceeds grid.max_mode");
    if (!(c.delta_rough > 0.0 && c.delta_rough <= 0.1)) bad("experiment.delta_rough", "must lie in (0, 0.1]");
    if (c.seeds < 1) bad("experiment.seeds", "must be >= 1");
    if (c.dir.empty()) bad("output.dir", "must not be empty");
    try {
        c.constants.validate();
    } catch (const Error& e) {
        bad("constants", e.what());
    }
    return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw SchemaError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    return from_tree(tree);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_for(const RunConfig& c, Command command) {
    switch (command) {
        case Command::smoothing: {
            if (c.p < 5) bad("equation.p", "smoothing experiments need p >= 5");
            if (c.s <= smoothing_threshold(c.p))
                bad("experiment.s", "must exceed " + std::to_string(smoothing_threshold(c.p)));
            const double emax = epsilon_max(c.p, c.s);
            if (!(c.epsilon > 0.0 && c.epsilon < emax))
                bad("experiment.epsilon", "must lie in (0, " + std::to_string(emax) + ")");
            if (c.normal_form && (c.p != 5 || c.max_mode > 16))
                bad("experiment.normal_form", "requires p = 5 and grid.max_mode <= 16");
            break;
        }
        case Command::resonance:
            if (c.box < 1) bad("experiment.box", "must be >= 1");
            if (c.p != 3 && c.p != 5) bad("equation.p", "direct split sums support p = 3 or 5");
            if (c.split_fields < 0) bad("experiment.split_fields", "must be >= 0");
            if (enumeration_cost(c.max_mode, c.p) > DirectSumLimits{}.max_terms)
                bad("grid.max_mode", "too large for the direct split sums");
            break;
        case Command::attractor:
            if (!(c.gamma > 0.0)) bad("equation.gamma", "forced runs need gamma > 0");
            if (c.forcing.empty()) bad("equation.forcing", "forced runs need a forcing term");
            if (c.sign != Sign::defocusing) bad("equation.sign", "forced runs are defocusing");
            if (c.ensemble_h1.size() < 3) bad("experiment.ensemble_h1", "need at least 3 initial scales");
            for (double n : c.ensemble_h1)
                if (!(n > 0.0)) bad("experiment.ensemble_h1", "scales must be > 0");
            if (!(c.agreement_tolerance > 0.0)) bad("experiment.agreement_tolerance", "must be > 0");
            if (!(c.window > 0.0)) bad("experiment.window", "must be > 0");
            if (!(c.epsilon > 0.0 && c.epsilon <= 1.0)) bad("experiment.epsilon", "must lie in (0, 1]");
            break;
        case Command::simulate:
        case Command::report: break;
    }
}

GridSpec RunConfig::grid() const { return pad_factor ? GridSpec(max_mode, *pad_factor) : GridSpec::for_exponent(max_mode, p); }

EquationParams RunConfig::equation(const GridSpec& g) const {
    EquationParams e;
    e.p = p;
    e.sign = sign;
    e.gamma = gamma;
    if (!forcing.empty()) {
        SpectralField f(g);
        for (const auto& m : forcing) f[m.k] += m.value;
        e.forcing = f;
    }
    e.validate_for(g);
    return e;
}

SpectralField RunConfig::initial_data(const GridSpec& g, std::uint64_t seed_value, double scale) const {
    if (initial == "plane_wave") return plane_wave(g, mode, scale);
    if (initial == "random_sobolev") return random_sobolev_data(s, delta_rough, seed_value, g, scale);
    SpectralField u(g);
    if (initial == "zero") return u;
    // bump: spectral weight centred at |k| = 4 with fixed quadratic phases, normalised to H^1 = scale
    for (int k = -g.max_mode(); k <= g.max_mode(); ++k) {
        const double a = std::abs(k) - 4.0;
        u[k] = std::exp(-0.25 * a * a) * std::polar(1.0, 0.7 * k + 0.3 * k * k);
    }
    u *= scale / sobolev_norm(u, 1.0);
    return u;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json forcing_json = nlohmann::json::array();
    for (const auto& m : forcing) forcing_json.push_back({{"k", m.k}, {"re", m.value.real()}, {"im", m.value.imag()}});
    return {
        {"grid", {{"max_mode", max_mode}, {"pad_factor", pad_factor ? pad_factor->str() : grid().pad_factor().str()}}},
        {"equation", {{"p", p}, {"sign", pnls::to_string(sign)}, {"gamma", gamma}, {"forcing", forcing_json}}},
        {"stepper",
         {{"dt", stepper.dt}, {"scheme", pnls::to_string(stepper.scheme)}, {"record_every", stepper.record_every}}},
        {"experiment",
         {{"initial", initial},
          {"mode", mode},
          {"amplitude", amplitude},
          {"s", s},
          {"epsilon", epsilon},
          {"delta_rough", delta_rough},
          {"seed", seed},
          {"seeds", seeds},
          {"t_end", t_end},
          {"box", box},
          {"split_fields", split_fields},
          {"ensemble_h1", ensemble_h1},
          {"agreement_tolerance", agreement_tolerance},
          {"window", window},
          {"normal_form", normal_form},
          {"global_smoothing", global_smoothing}}},
        {"constants",
         {{"c_B", constants.c_B.str()}, {"c_C", constants.c_C.str()}, {"r_comp", constants.r_comp.str()},
          {"gap", constants.gap.str()}}},
        {"output", {{"dir", dir}, {"dumps", dumps}}},
    };
}

}  // namespace pnls::harness
