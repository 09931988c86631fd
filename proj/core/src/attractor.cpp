#include "pnls/attractor.hpp"

#include "parallel.hpp"
#include "pnls/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pnls {

double positive_energy(const SpectralField& field, int p) {
    field.grid().require_degree(p);
    return 0.5 * gradient_square(field) + lp_integral(field, p + 1) / (p + 1);
}

std::vector<double> three_point_derivative(const std::vector<double>& t, const std::vector<double>& f,
                                           bool include_endpoints) {
    const std::size_t n = t.size();
    if (n < 3 || f.size() != n) throw DimensionError("differencing needs at least 3 aligned samples");
    std::vector<double> d;
    auto one_sided = [&](std::size_t a, std::size_t b, std::size_t c) {
        // Derivative at t[a] from samples a, b, c (Lagrange).
        const double ta = t[a], tb = t[b], tc = t[c];
        return f[a] * (2 * ta - tb - tc) / ((ta - tb) * (ta - tc)) + f[b] * (ta - tc) / ((tb - ta) * (tb - tc)) +
               f[c] * (ta - tb) / ((tc - ta) * (tc - tb));
    };
    if (include_endpoints) d.push_back(one_sided(0, 1, 2));
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
        if (!(h1 > 0 && h2 > 0)) throw AlignmentError("snapshot times must increase strictly");
        d.push_back(-h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] +
                    h1 / (h2 * (h1 + h2)) * f[i + 1]);
    }
    if (include_endpoints) d.push_back(one_sided(n - 1, n - 2, n - 3));
    return d;
}

namespace {

double forcing_mass_term(const SpectralField& u, const EquationParams& params) {
    if (!params.forcing) return 0.0;
    return -l2_pairing(u, *params.forcing).imag();
}

double forcing_energy_term(const SpectralField& u, const EquationParams& params) {
    if (!params.forcing) return 0.0;
    const auto& f = *params.forcing;
    const int K = u.max_mode();
    // int u_x conj(f_x) = 2 pi sum k^2 u_k conj(f_k)
    cplx grad(0.0, 0.0);
    for (int k = -K; k <= K; ++k) grad += double(k) * k * u[k] * std::conj(f[k]);
    grad *= GridSpec::length();
    // int |u|^{p-1} u conj(f) on the padded grid.
    const auto us = synthesize(u);
    const auto fs = synthesize_on(f, u.grid().samples());
    const int half = (params.p - 1) / 2;
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < us.size(); ++j) {
        const double a2 = std::norm(us[j]);
        double w = 1.0;
        for (int i = 0; i < half; ++i) w *= a2;
        acc += w * us[j] * std::conj(fs[j]);
    }
    acc *= GridSpec::length() / static_cast<double>(us.size());
    return -grad.imag() - acc.imag();
}

DiagnosticSeries residual_series(const std::vector<Snapshot>& traj, bool include_endpoints,
                                 const std::vector<double>& quantity, const std::vector<double>& dissipation,
                                 const std::vector<double>& forcing) {
    std::vector<double> t;
    for (const auto& s : traj) t.push_back(s.t);
    const auto d = three_point_derivative(t, quantity, include_endpoints);
    DiagnosticSeries out({"t", "lhs", "dissipation", "forcing", "residual"});
    const std::size_t offset = include_endpoints ? 0 : 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const std::size_t j = i + offset;
        out.add_row({t[j], d[i], dissipation[j], forcing[j], d[i] - dissipation[j] - forcing[j]});
    }
    return out;
}

}  // namespace

DiagnosticSeries mass_dissipation_residual(const std::vector<Snapshot>& traj, const EquationParams& params,
                                           bool include_endpoints) {
    if (traj.size() < 3) throw DimensionError("mass residual needs at least 3 snapshots");
    std::vector<double> q, dis, frc;
    for (const auto& s : traj) {
        const double m = mass(s.u);
        q.push_back(0.5 * m);
        dis.push_back(-params.gamma * m);
        frc.push_back(forcing_mass_term(s.u, params));
    }
    return residual_series(traj, include_endpoints, q, dis, frc);
}

DiagnosticSeries energy_dissipation_residual(const std::vector<Snapshot>& traj, const EquationParams& params,
                                             bool include_endpoints) {
    if (traj.size() < 3) throw DimensionError("energy residual needs at least 3 snapshots");
    std::vector<double> q, dis, frc;
    for (const auto& s : traj) {
        const double gx = gradient_square(s.u);
        const double lp = lp_integral(s.u, params.p + 1);
        q.push_back(0.5 * gx + lp / (params.p + 1));
        dis.push_back(-params.gamma * (gx + lp));
        frc.push_back(forcing_energy_term(s.u, params));
    }
    return residual_series(traj, include_endpoints, q, dis, frc);
}

double relative_residual(const DiagnosticSeries& series) {
    const auto r = series.column("residual");
    const auto d = series.column("dissipation");
    const auto f = series.column("forcing");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        num = std::max(num, std::abs(r[i]));
        den = std::max(den, std::abs(d[i]) + std::abs(f[i]));
    }
    if (den == 0.0) return num;
    return num / den;
}

SpectralField forced_gauge(const SpectralField& f, const PhaseState& state) { return to_gauge(f, state); }

SpectralField apply_G(const SpectralField& f, double gamma) {
    if (!(gamma > 0)) throw DomainError("apply_G needs gamma > 0");
    SpectralField g(f.grid());
    const int K = f.max_mode();
    for (int k = -K; k <= K; ++k) g[k] = f[k] / cplx(-double(k) * k, gamma);
    return g;
}

void ForcedRunConfig::validate() const {
    params.validate();
    if (!(params.gamma > 0)) throw ConfigError("forced runs need gamma > 0");
    if (!params.forcing) throw ConfigError("forced runs need a forcing field");
    if (params.sign != Sign::defocusing) throw ConfigError("forced runs are defocusing");
    if (stepper.scheme != Scheme::exponential_rk4) throw ConfigError("forced runs use exponential_rk4");
    if (!(horizon > 0)) throw ConfigError("horizon must be positive");
    if (ensemble.size() < 3) throw ConfigError("absorbing sweep needs at least 3 ensemble members");
}

std::string describe_flags(int flags) {
    if (flags == flag_ok) return "ok";
    std::string s;
    auto add = [&](const char* w) { s += s.empty() ? w : std::string("|") + w; };
    if (flags & flag_blowup) add("blowup");
    if (flags & flag_spread) add("spread");
    if (flags & flag_not_settled) add("not_settled");
    return s;
}

namespace {

MemberResult run_member(const ForcedRunConfig& cfg, const EnsembleMember& member) {
    MemberResult res;
    res.id = member.id;
    res.u0_norm = sobolev_norm(member.u0, 1.0);
    PhaseTracker tracker(cfg.params);
    Trajectory traj = evolve(member.u0, cfg.params, cfg.stepper, cfg.horizon, {tracker.observer()});
    if (traj.blowup) {
        res.flags |= flag_blowup;
        res.series = DiagnosticSeries(
            {"t", "H1_u", "mass", "energy", "mass_residual", "energy_residual", "H1eps_diff"});
        return res;
    }
    const auto ms = mass_dissipation_residual(traj.snapshots, cfg.params, true);
    const auto es = energy_dissipation_residual(traj.snapshots, cfg.params, true);
    const auto states = tracker.recorded_states();
    res.series = DiagnosticSeries({"t", "H1_u", "mass", "energy", "mass_residual", "energy_residual", "H1eps_diff"});
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& s = traj.snapshots[i];
        const SpectralField v = to_gauge(s.u, states[i]);
        const double diff = sobolev_norm(v - damped_propagate(member.u0, s.t, cfg.params.gamma), 1.0 + cfg.epsilon);
        res.series.add_row({s.t, sobolev_norm(s.u, 1.0), mass(s.u), positive_energy(s.u, cfg.params.p),
                            ms.rows()[i][4], es.rows()[i][4], diff});
        if (s.t >= 0.75 * cfg.horizon) res.late.push_back(s);
    }
    return res;
}

}  // namespace

SweepReport absorbing_sweep(const ForcedRunConfig& config) {
    config.validate();
    SweepReport rep;
    rep.members.resize(config.ensemble.size());
    detail::parallel_for(0, static_cast<int>(config.ensemble.size()), config.threads, [&](int i) {
        rep.members[static_cast<std::size_t>(i)] = run_member(config, config.ensemble[static_cast<std::size_t>(i)]);
    });

    const double H = config.horizon;
    // Settling time per member: after it, H^1 stays below 1.05 x the second-half maximum.
    for (auto& m : rep.members) {
        if (m.flags & flag_blowup) continue;
        const auto t = m.series.column("t");
        const auto h1 = m.series.column("H1_u");
        double late_max = 0.0, q3 = 0.0, q4 = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= 0.5 * H) late_max = std::max(late_max, h1[i]);
            if (t[i] >= 0.5 * H && t[i] < 0.75 * H) q3 = std::max(q3, h1[i]);
            if (t[i] >= 0.75 * H) q4 = std::max(q4, h1[i]);
        }
        std::size_t first = t.size() - 1;
        for (std::size_t i = t.size(); i-- > 0;) {
            if (h1[i] > 1.05 * late_max) break;
            first = i;
        }
        m.settle_time = t[first];
        rep.T_star = std::max(rep.T_star, m.settle_time);
        if (q3 > 0 && std::abs(q4 - q3) > config.agreement_tolerance * q3) m.flags |= flag_not_settled;
    }
    double lo = INFINITY, hi = 0.0;
    for (auto& m : rep.members) {
        if (m.flags & flag_blowup) continue;
        const auto t = m.series.column("t");
        const auto h1 = m.series.column("H1_u");
        double mx = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= rep.T_star) mx = std::max(mx, h1[i]);
        m.longtime_H1_max = mx;
        lo = std::min(lo, mx);
        hi = std::max(hi, mx);
    }
    rep.R_star = hi;
    rep.spread = hi > 0 ? (hi - lo) / hi : 0.0;
    bool any_blowup = false;
    for (const auto& m : rep.members) any_blowup = any_blowup || (m.flags & flag_blowup);
    rep.agree = !any_blowup && rep.spread <= config.agreement_tolerance;
    if (!rep.agree)
        for (auto& m : rep.members) m.flags |= flag_spread;
    return rep;
}

DiagnosticSeries SweepReport::summary() const {
    DiagnosticSeries s({"member_id", "u0_norm", "longtime_H1_max", "R_star", "flags"});
    for (std::size_t i = 0; i < members.size(); ++i)
        s.add_row({double(i), members[i].u0_norm, members[i].longtime_H1_max, R_star, double(members[i].flags)});
    return s;
}

GlobalSmoothingReport global_smoothing_check(const std::vector<Snapshot>& v_traj, const SpectralField& u0,
                                             double gamma, double epsilon, double window) {
    if (!(epsilon > 0 && epsilon <= 1)) throw DomainError("epsilon must lie in (0, 1]");
    if (!(window > 0)) throw DomainError("window must be positive");
    if (v_traj.empty()) throw DimensionError("empty trajectory");
    GlobalSmoothingReport rep;
    rep.series = DiagnosticSeries({"t", "H1eps_diff", "running_max"});
    const double s = 1.0 + epsilon;
    double run = 0.0;
    std::vector<double> ts, rm;
    for (const auto& snap : v_traj) {
        const double d = sobolev_norm(snap.u - damped_propagate(u0, snap.t, gamma), s);
        run = std::max(run, d);
        rep.series.add_row({snap.t, d, run});
        ts.push_back(snap.t);
        rm.push_back(run);
    }
    rep.final_difference = rep.series.rows().back()[1];
    const double H = ts.back();
    double half = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] <= 0.5 * H + 1e-12) half = rm[i];
    rep.final_half_growth = half > 0 ? (run - half) / half : 0.0;

    // Snapshots at multiples of the window.
    std::vector<const Snapshot*> marks;
    const double tol = 1e-9 * std::max(1.0, H);
    for (int j = 0;; ++j) {
        const double tj = j * window;
        if (tj > H + tol) break;
        const Snapshot* hit = nullptr;
        for (const auto& snap : v_traj)
            if (std::abs(snap.t - tj) <= tol) {
                hit = &snap;
                break;
            }
        if (!hit) break;
        marks.push_back(hit);
    }
    rep.windows = DiagnosticSeries({"j", "t_start", "increment", "weight"});
    if (marks.size() >= 2) {
        const std::size_t J = marks.size() - 1;
        // v(J w) - W_{J w} u0 = sum_j W_{(J-1-j) w} [v((j+1) w) - W_w v(j w)]
        std::vector<double> inc(J);
        for (std::size_t j = 0; j < J; ++j) {
            const SpectralField step = damped_propagate(marks[j]->u, window, gamma);
            inc[j] = sobolev_norm(marks[j + 1]->u - step, s);
            const double w = std::exp(-gamma * double(J - 1 - j) * window);
            rep.windows.add_row({double(j), marks[j]->t, inc[j], w});
            rep.telescoped_bound += w * inc[j];
        }
    }
    return rep;
}

DiagnosticSeries omega_limit_distances(const std::vector<Snapshot>& snapshots) {
    DiagnosticSeries out({"i", "j", "t_i", "t_j", "H1_distance"});
    for (std::size_t i = 0; i < snapshots.size(); ++i)
        for (std::size_t j = i + 1; j < snapshots.size(); ++j)
            out.add_row({double(i), double(j), snapshots[i].t, snapshots[j].t,
                         sobolev_norm(snapshots[i].u - snapshots[j].u, 1.0)});
    return out;
}

}  // namespace pnls
