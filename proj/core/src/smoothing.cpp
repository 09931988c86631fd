#include "pnls/smoothing.hpp"

#include "pnls/errors.hpp"
#include "pnls/gauge.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pnls {

double smoothing_threshold(int p) { return (p - 3) / (2.0 * (p - 1)); }

double epsilon_max(int p, double s) {
    if (p < 3 || p % 2 == 0) throw DomainError("p must be odd and >= 3");
    const double thr = smoothing_threshold(p);
    if (s < thr) throw DomainError("s = " + std::to_string(s) + " is below the threshold (p-3)/(2(p-1)) = " +
                                   std::to_string(thr));
    const double a = (p - 1) * s - (p - 3) / 2.0;
    const double b = s - (p - 5) / (2.0 * (p - 1));
    return std::min({a, b, 1.0});
}

void SmoothingParams::validate() const {
    if (p < 5 || p % 2 == 0) throw ConfigError("smoothing experiments need odd p >= 5");
    if (!(s > smoothing_threshold(p)))
        throw ConfigError("s must exceed (p-3)/(2(p-1)) = " + std::to_string(smoothing_threshold(p)));
    const double emax = epsilon_max(p, s);
    if (!(epsilon > 0 && epsilon < emax))
        throw ConfigError("epsilon must lie in (0, " + std::to_string(emax) + ")");
    if (!(delta_rough > 0 && delta_rough <= 0.1)) throw ConfigError("delta_rough must lie in (0, 0.1]");
}

SpectralField random_sobolev_data(double s, double delta_rough, std::uint64_t seed, const GridSpec& grid,
                                  double amplitude) {
    if (!(delta_rough > 0 && delta_rough <= 0.1)) throw DomainError("delta_rough must lie in (0, 0.1]");
    SpectralField f(grid);
    const int K = grid.max_mode();
    const double decay = s + 0.5 + delta_rough;
    for (int k = -K; k <= K; ++k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k + (1 << 30))};
        std::mt19937_64 gen(seq);
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double mag = amplitude * std::pow(1.0 + double(k) * k, -0.5 * decay);
        f[k] = std::polar(mag, 2.0 * std::numbers::pi * unit);
    }
    return f;
}

SpectralField smoothing_residual(const SpectralField& u, const SpectralField& u0, double t, double theta, Sign sign) {
    return u - std::conj(gauge_factor(theta, sign)) * free_propagate(u0, t);
}

DiagnosticSeries smoothing_difference(const std::vector<Snapshot>& u_traj, const std::vector<double>& phase_times,
                                      const std::vector<double>& phase_theta, const SpectralField& u0,
                                      const EquationParams& params, double s, double epsilon) {
    if (u_traj.size() != phase_times.size() || phase_times.size() != phase_theta.size())
        throw AlignmentError("trajectory has " + std::to_string(u_traj.size()) + " snapshots but phase has " +
                             std::to_string(phase_times.size()) + " entries");
    std::vector<std::string> cols{"t", "theta", "Hs_u", "Hs_eps_D", "Hs_D"};
    for (int N : band_ladder) cols.push_back("band_N" + std::to_string(N) + "_D");
    for (const char* c : {"slope_D", "mass", "energy"}) cols.emplace_back(c);
    DiagnosticSeries out(cols);
    for (std::size_t i = 0; i < u_traj.size(); ++i) {
        const auto& snap = u_traj[i];
        if (std::abs(snap.t - phase_times[i]) > 1e-12 * std::max(1.0, std::abs(snap.t)))
            throw AlignmentError("snapshot time " + std::to_string(snap.t) + " does not match phase time " +
                                 std::to_string(phase_times[i]));
        const SpectralField D = smoothing_residual(snap.u, u0, snap.t, phase_theta[i], params.sign);
        std::vector<double> row{snap.t, phase_theta[i], sobolev_norm(snap.u, s), sobolev_norm(D, s + epsilon),
                                sobolev_norm(D, s)};
        for (int N : band_ladder) row.push_back(sobolev_norm(project_high(D, N), s));
        double slope = 0.0;
        if (D.max_mode() >= 16) {
            try {
                slope = tail_slope(D, 4, D.max_mode());
            } catch (const FitError&) {
                slope = 0.0;
            }
        }
        row.push_back(slope);
        row.push_back(mass(snap.u));
        row.push_back(energy(snap.u, params));
        out.add_row(std::move(row));
    }
    return out;
}

DiagnosticSeries extract_z(const std::vector<Snapshot>& v_traj, const SpectralField& u0,
                           const EquationParams& params, const CaseConstants& constants, double s, double epsilon,
                           const DirectSumLimits& limits) {
    DiagnosticSeries out({"t", "Hs_eps_z", "Hs_eps_T"});
    const double sg = sign_value(params.sign);
    for (const auto& snap : v_traj) {
        const SpectralField w = free_propagate(u0, snap.t);
        const SpectralField T = apply_T(w, snap.u, params, constants, limits);
        const SpectralField z = snap.u - w - cplx(sg, 0.0) * T;
        out.add_row({snap.t, sobolev_norm(z, s + epsilon), sobolev_norm(T, s + epsilon)});
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre needs n >= 1");
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

SpectralField picard_oracle(const SpectralField& u0, const EquationParams& params, double t, int n_quad) {
    if (n_quad < 8) throw DomainError("picard_oracle needs n_quad >= 8");
    SpectralField out = free_propagate(u0, t);
    if (t == 0.0) return out;
    const auto [x, w] = gauss_legendre(n_quad);
    SpectralField integral(u0.grid());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = 0.5 * t * (x[i] + 1.0);
        const SpectralField nl = nonlinearity(free_propagate(u0, s), params);
        integral += cplx(0.5 * t * w[i], 0.0) * free_propagate(nl, t - s);
    }
    out += cplx(0.0, sign_value(params.sign)) * integral;
    return out;
}

double tail_slope(const SpectralField& field, int k_min, int k_max) {
    if (k_min < 4) throw FitError("tail fit needs k_min >= 4");
    if (k_max > field.max_mode() || k_max < k_min) throw FitError("tail fit range outside the window");
    std::vector<double> xs, ys;
    int bins = 0;
    for (int lo = 1; lo <= k_max; lo *= 2) {
        const int a = std::max(lo, k_min), b = std::min(2 * lo - 1, k_max);
        if (a > b) continue;
        ++bins;
        double sx = 0.0, sy = 0.0;
        int n = 0;
        for (int k = a; k <= b; ++k) {
            for (int sgn : {-1, 1}) {
                const double m = std::abs(field[sgn * k]);
                if (m == 0.0) continue;
                sx += 0.5 * std::log1p(double(k) * k);
                sy += std::log(m);
                ++n;
            }
        }
        if (n == 0) continue;
        xs.push_back(sx / n);
        ys.push_back(sy / n);
    }
    if (bins < 3) throw FitError("tail fit needs at least three dyadic bins in [k_min, k_max]");
    if (xs.size() < 3) throw FitError("tail fit found fewer than three non-empty bins");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

}  // namespace pnls
