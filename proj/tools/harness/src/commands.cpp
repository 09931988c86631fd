#include "pnls_harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#ifndef PNLS_CODE_VERSION
#define PNLS_CODE_VERSION "unknown"
#endif

namespace pnls::harness {

const char* code_version() { return PNLS_CODE_VERSION; }

namespace {

namespace fs = std::filesystem;

struct Context {
    const RunConfig& cfg;
    fs::path dir;
    RunManifest& manifest;
    int threads;
    std::ostream& log;

    void emit(const std::string& name, const DiagnosticSeries& series) {
        write_csv(dir / name, series);
        manifest.outputs.push_back(name);
    }
    Validation& checks() { return manifest.validation; }
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string seed_tag(std::uint64_t seed) { return std::to_string(seed); }

// ---------------------------------------------------------------------------------------------

void simulate(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto grid = cfg.grid();
    const auto params = cfg.equation(grid);
    const auto u0 = cfg.initial_data(grid, cfg.seed, cfg.amplitude);

    PhaseTracker tracker(params);
    const auto traj = evolve(u0, params, cfg.stepper, cfg.t_end, {tracker.observer()});

    DiagnosticSeries series({"t", "theta", "H1_u", "mass", "energy"});
    const auto& theta = tracker.theta();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& s = traj.snapshots[i];
        series.add_row({s.t, theta.at(i), sobolev_norm(s.u, 1.0), mass(s.u), energy(s.u, params)});
    }
    ctx.emit("trajectory.csv", series);

    if (cfg.dumps) {
        fs::create_directories(ctx.dir / "dumps");
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            char name[48];
            std::snprintf(name, sizeof name, "dumps/snapshot_%06zu.bin", i);
            write_dump(ctx.dir / name, traj.snapshots[i].u, params.p, traj.snapshots[i].t);
            ctx.manifest.outputs.push_back(name);
        }
    }

    auto& v = ctx.checks();
    if (traj.blowup) {
        v.fail("blowup", traj.blowup->message);
        return;
    }
    v.at_most("blowup", 0.0, 0.0);
    const auto& uT = traj.back().u;
    if (params.conservative()) {
        const double m0 = mass(u0), e0 = energy(u0, params);
        if (m0 > 0) v.info("mass_drift", std::abs(mass(uT) - m0) / m0);
        if (e0 != 0) v.info("energy_drift", std::abs(energy(uT, params) - e0) / std::abs(e0));
        if (cfg.initial == "plane_wave" && cfg.amplitude != 0.0) {
            const double A = std::abs(cfg.amplitude), t = traj.back().t;
            const double rate = -double(cfg.mode) * cfg.mode + sign_value(params.sign) * std::pow(A, params.p - 1);
            const cplx exact = cfg.amplitude * std::exp(cplx(0.0, rate * t));
            v.at_most("plane_wave_phase_error", std::abs(std::arg(uT[cfg.mode] / exact)), 1e-8);
            v.info("plane_wave_amplitude_error", std::abs(std::abs(uT[cfg.mode]) - A));
        }
    }
}

// ---------------------------------------------------------------------------------------------

void smoothing(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto grid = cfg.grid();
    const auto params = cfg.equation(grid);
    auto& v = ctx.checks();

    std::map<int, std::vector<double>> band;
    std::vector<double> slopes, d_final, picard_ratio, z_margin;
    for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.seed + std::uint64_t(i);
        const auto u0 = cfg.initial_data(grid, seed, cfg.amplitude);
        PhaseTracker tracker(params);
        const auto traj = evolve(u0, params, cfg.stepper, cfg.t_end, {tracker.observer()});
        if (traj.blowup) {
            v.fail("blowup_seed_" + seed_tag(seed), traj.blowup->message);
            continue;
        }
        const auto series =
            smoothing_difference(traj.snapshots, tracker.times(), tracker.theta(), u0, params, cfg.s, cfg.epsilon);
        ctx.emit("smoothing_seed" + seed_tag(seed) + ".csv", series);

        const auto& uT = traj.back().u;
        const auto D = smoothing_residual(uT, u0, traj.back().t, tracker.state().theta, params.sign);
        d_final.push_back(sobolev_norm(D, cfg.s + cfg.epsilon));
        for (int N : band_ladder) {
            if (N >= grid.max_mode()) break;
            const double denom = sobolev_norm(project_high(uT, N), cfg.s);
            if (denom > 0) band[N].push_back(sobolev_norm(project_high(D, N), cfg.s) / denom);
        }
        if (grid.max_mode() >= 16) slopes.push_back(series.at(series.size() - 1, "slope_D"));

        // first Duhamel iterate as a short-time reference: error should shrink like t^2.
        // Node count follows the fastest phase (p+1)K^2 of the integrand.
        const double tp = std::min(1e-3, cfg.t_end);
        double err[2];
        for (int h = 0; h < 2; ++h) {
            const double t = h == 0 ? tp : 0.5 * tp;
            StepperConfig sc = cfg.stepper;
            sc.dt = std::min(sc.dt, t / 100.0);
            sc.record_every = int(step_count(t, sc.dt));
            const auto short_run = evolve(u0, params, sc, t);
            const double K = grid.max_mode();
            const int nodes = 16 + int(std::ceil(0.5 * (params.p + 1) * K * K * t));
            err[h] = sobolev_norm(short_run.back().u - picard_oracle(u0, params, t, nodes), 0.0);
        }
        picard_ratio.push_back(err[1] > 0 ? err[0] / err[1] : INFINITY);

        if (cfg.normal_form) {
            const auto gauged = evolve_gauged(u0, params, cfg.stepper, cfg.t_end);
            const auto z = extract_z(gauged.traj.snapshots, u0, params, cfg.constants, cfg.s, cfg.epsilon);
            ctx.emit("z_seed" + seed_tag(seed) + ".csv", z);
            const auto col = z.column("Hs_eps_z");
            const double bound = 5.0 * col.front() + std::pow(sobolev_norm(u0, cfg.s), params.p);
            z_margin.push_back(*std::max_element(col.begin(), col.end()) / bound);
        }
    }
    if (d_final.empty()) return;

    v.info("Hs_eps_D_final_median", median(d_final));
    double prev = -1.0;
    int prev_N = 0;
    for (const auto& [N, ratios] : band) {
        const double r = median(ratios);
        v.info("band_ratio_N" + std::to_string(N), r);
        if (prev > 0)
            v.at_most("band_step_N" + std::to_string(prev_N) + "_N" + std::to_string(N), r / prev, 1.2);
        prev = r;
        prev_N = N;
    }
    if (!slopes.empty()) {
        const double reference = -(cfg.s + cfg.epsilon) - 0.5;
        if (grid.max_mode() >= 64) v.at_most("tail_slope_D", median(slopes), reference);
        else v.info("tail_slope_D", median(slopes));
    }
    v.at_least("picard_order_ratio", *std::min_element(picard_ratio.begin(), picard_ratio.end()), 3.5);
    if (!z_margin.empty()) v.at_most("z_bound_ratio", *std::max_element(z_margin.begin(), z_margin.end()), 1.0);
}

// ---------------------------------------------------------------------------------------------

void resonance(Context& ctx) {
    const auto& cfg = ctx.cfg;
    auto& v = ctx.checks();
    const auto rep = verify_decomposition(cfg.box, cfg.p, cfg.constants, {1.0e9, ctx.threads});
    DiagnosticSeries dec({"box", "p", "c_B", "c_C", "r_comp", "gap", "violations", "min_ratio", "wall_time_ms"});
    dec.add_row({double(rep.box), double(rep.p), cfg.constants.c_B.value(), cfg.constants.c_C.value(),
                 cfg.constants.r_comp.value(), cfg.constants.gap.value(), double(rep.violations),
                 rep.min_ratio ? rep.min_ratio->value() : 0.0, rep.wall_time_ms});
    ctx.emit("decomposition.csv", dec);
    v.at_most("lemma_violations", double(rep.violations), 0.0);
    if (rep.min_ratio) v.greater("lemma_min_ratio", rep.min_ratio->value(), cfg.constants.c_B.value());
    v.info("lemma_tuples", double(rep.tuples));

    const auto grid = cfg.grid();
    const auto params = cfg.equation(grid);
    if (cfg.split_fields > 0) {
        DiagnosticSeries split({"field", "seed", "max_abs_error", "relative_error"});
        double worst = 0.0;
        for (int i = 0; i < cfg.split_fields; ++i) {
            const std::uint64_t seed = cfg.seed + std::uint64_t(i);
            const auto u = random_sobolev_data(cfg.s, cfg.delta_rough, seed, grid, cfg.amplitude);
            const auto parts = split_nonlinearity(u, params, {DirectSumLimits{}.max_terms, ctx.threads});
            const auto fft = nonlinearity(u, params);
            double err = 0.0, scale = 0.0;
            for (int k = -grid.max_mode(); k <= grid.max_mode(); ++k) {
                err = std::max(err, std::abs(parts.R1[k] + parts.R2[k] + parts.NR[k] - fft[k]));
                scale = std::max(scale, std::abs(fft[k]));
            }
            const double rel = scale > 0 ? err / scale : err;
            split.add_row({double(i), double(seed), err, rel});
            worst = std::max(worst, rel);
        }
        ctx.emit("split_identity.csv", split);
        v.at_most("split_identity_relative_error", worst, 1e-12);
    }
    const double A = cfg.amplitude;
    const auto s = split_nonlinearity(plane_wave(grid, cfg.mode, A), params);
    const double ap = std::pow(std::abs(A), params.p - 1) * A;
    double dev = 0.0;
    for (int k = -grid.max_mode(); k <= grid.max_mode(); ++k) {
        const cplx r1 = k == cfg.mode ? 0.5 * (params.p + 1) * ap : 0.0;
        const cplx r2 = k == cfg.mode ? -0.5 * (params.p - 1) * ap : 0.0;
        dev = std::max({dev, std::abs(s.R1[k] - r1), std::abs(s.R2[k] - r2), std::abs(s.NR[k])});
    }
    v.at_most("single_mode_split_error", ap != 0 ? dev / std::abs(ap) : dev, 1e-12);
}

// ---------------------------------------------------------------------------------------------

void attractor(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto grid = cfg.grid();
    auto& v = ctx.checks();

    ForcedRunConfig fc;
    fc.params = cfg.equation(grid);
    fc.stepper = cfg.stepper;
    fc.horizon = cfg.t_end;
    fc.agreement_tolerance = cfg.agreement_tolerance;
    fc.epsilon = cfg.epsilon;
    fc.threads = ctx.threads;
    const auto shape = cfg.initial_data(grid, cfg.seed, 1.0);
    const double shape_h1 = sobolev_norm(shape, 1.0);
    if (!(shape_h1 > 0)) throw DomainError("initial profile has zero H^1 norm");
    for (std::size_t i = 0; i < cfg.ensemble_h1.size(); ++i)
        fc.ensemble.push_back({"m" + std::to_string(i), (cfg.ensemble_h1[i] / shape_h1) * shape});

    const auto rep = absorbing_sweep(fc);
    int blowups = 0, unsettled = 0;
    double mass_res = 0.0, energy_res = 0.0;
    for (std::size_t i = 0; i < rep.members.size(); ++i) {
        const auto& m = rep.members[i];
        ctx.emit("member_" + std::to_string(i) + ".csv", m.series);
        if (m.flags & flag_blowup) ++blowups;
        if (m.flags & flag_not_settled) ++unsettled;
        if (m.late.size() >= 2) ctx.emit("omega_" + std::to_string(i) + ".csv", omega_limit_distances(m.late));
        for (double r : m.series.column("mass_residual")) mass_res = std::max(mass_res, std::abs(r));
        for (double r : m.series.column("energy_residual")) energy_res = std::max(energy_res, std::abs(r));
    }
    ctx.emit("sweep_summary.csv", rep.summary());
    v.at_most("member_blowups", double(blowups), 0.0);
    v.at_most("longtime_spread", rep.spread, cfg.agreement_tolerance);
    v.info("members_not_settled", double(unsettled));
    v.info("R_star", rep.R_star);
    v.info("T_star", rep.T_star);
    v.info("max_abs_mass_residual", mass_res);
    v.info("max_abs_energy_residual", energy_res);

    double decay = 0.0;
    for (const auto& m : fc.ensemble)
        for (double t : {0.25 * cfg.t_end, 0.5 * cfg.t_end, cfg.t_end}) {
            const double lhs = sobolev_norm(damped_propagate(m.u0, t, cfg.gamma), 1.0);
            const double rhs = std::exp(-cfg.gamma * t) * sobolev_norm(m.u0, 1.0);
            decay = std::max(decay, std::abs(lhs / rhs - 1.0));
        }
    v.at_most("damped_decay_exact", decay, 1e-13);

    if (cfg.global_smoothing && blowups == 0) {
        const auto& u0 = fc.ensemble.front().u0;
        PhaseTracker tracker(fc.params);
        const auto traj = evolve(u0, fc.params, cfg.stepper, cfg.t_end, {tracker.observer()});
        const auto states = tracker.recorded_states();
        std::vector<Snapshot> gauged;
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i)
            gauged.push_back({traj.snapshots[i].t, to_gauge(traj.snapshots[i].u, states[i])});
        const auto gs = global_smoothing_check(gauged, u0, cfg.gamma, cfg.epsilon, cfg.window);
        ctx.emit("global_smoothing.csv", gs.series);
        ctx.emit("smoothing_windows.csv", gs.windows);
        v.at_most("global_smoothing_growth", gs.final_half_growth, 0.02);
        v.info("telescoped_bound", gs.telescoped_bound);
        if (!gs.windows.empty()) {
            const double t_mark = gs.windows.at(gs.windows.size() - 1, "t_start") + cfg.window;
            for (std::size_t r = 0; r < gs.series.size(); ++r)
                if (std::abs(gs.series.at(r, "t") - t_mark) <= 1e-9 * std::max(1.0, t_mark)) {
                    v.at_most("telescoping_inequality", gs.series.at(r, "H1eps_diff"),
                              gs.telescoped_bound * (1.0 + 1e-9) + 1e-12);
                    break;
                }
        }
    }
}

void print_summary(const RunManifest& m, std::ostream& log) {
    for (const auto& [name, c] : m.validation.checks()) {
        log << "  " << std::left << std::setw(36) << name << ' ' << std::setw(4) << c.status << ' '
            << std::setprecision(6) << c.value;
        if (c.bound) log << ' ' << c.relation << ' ' << *c.bound;
        log << '\n';
    }
}

}  // namespace

int run(Command command, const RunOptions& options, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = load_config(options.config_path);
        if (options.seed_override) cfg.seed = *options.seed_override;
        validate_for(cfg, command);
        const auto grid = cfg.grid();
        (void)cfg.equation(grid);
    } catch (const SchemaError& e) {
        log << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const ConfigError& e) {
        log << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const DomainError& e) {
        log << "schema error: " << e.what() << '\n';
        return exit_schema;
    }
    if (options.threads < 1) {
        log << "schema error: --threads must be >= 1\n";
        return exit_schema;
    }

    RunManifest manifest;
    manifest.command = to_string(command);
    manifest.code_version = code_version();
    manifest.config = cfg.to_json();
    manifest.run_id = make_run_id(manifest.command, manifest.config, manifest.code_version);
    manifest.started = utc_timestamp();

    const fs::path root = options.out ? *options.out : fs::path(cfg.dir);
    const fs::path dir = root / manifest.run_id;
    fs::create_directories(dir);
    Context ctx{cfg, dir, manifest, options.threads, log};
    try {
        switch (command) {
            case Command::simulate: simulate(ctx); break;
            case Command::smoothing: smoothing(ctx); break;
            case Command::resonance: resonance(ctx); break;
            case Command::attractor: attractor(ctx); break;
            case Command::report: break;
        }
    } catch (const std::exception& e) {
        manifest.validation.fail("run", e.what());
    }
    manifest.finished = utc_timestamp();
    write_text_atomic(dir / "manifest.json", manifest.to_json().dump(2) + "\n");

    log << manifest.command << ' ' << manifest.run_id << '\n';
    print_summary(manifest, log);
    const bool ok = manifest.validation.all_pass();
    if (!ok)
        for (const auto& name : manifest.validation.failures()) log << "failed check: " << name << '\n';
    return ok ? exit_ok : exit_validation;
}

int report(const fs::path& runs_dir, std::ostream& log) {
    if (!fs::is_directory(runs_dir)) {
        log << "schema error: " << runs_dir.string() << " is not a directory\n";
        return exit_schema;
    }
    std::vector<fs::path> manifests;
    for (const auto& entry : fs::directory_iterator(runs_dir))
        if (entry.is_directory() && fs::exists(entry.path() / "manifest.json"))
            manifests.push_back(entry.path() / "manifest.json");
    std::sort(manifests.begin(), manifests.end());

    std::ostringstream csv;
    csv << "run_id,command,checks,failed,status\n";
    int failed_runs = 0;
    for (const auto& path : manifests) {
        nlohmann::json j;
        try {
            std::ifstream in(path);
            j = nlohmann::json::parse(in);
        } catch (const std::exception& e) {
            log << "skipping " << path.string() << ": " << e.what() << '\n';
            continue;
        }
        int checks = 0, failed = 0;
        const auto checks_json = j.value("validation", nlohmann::json::object());
        for (const auto& [name, c] : checks_json.items()) {
            ++checks;
            if (c.value("status", "") == "fail") ++failed;
        }
        failed_runs += failed > 0;
        const std::string status = failed ? "fail" : "pass";
        csv << j.value("run_id", "") << ',' << j.value("command", "") << ',' << checks << ',' << failed << ','
            << status << '\n';
        log << std::left << std::setw(12) << j.value("command", "") << ' ' << j.value("run_id", "").substr(0, 16)
            << "  " << status << " (" << failed << '/' << checks << " failed)\n";
    }
    write_text_atomic(runs_dir / "report.csv", csv.str());
    log << manifests.size() << " runs, " << failed_runs << " with failures\n";
    return failed_runs == 0 ? exit_ok : exit_validation;
}

}  // namespace pnls::harness
