#include "pnls/spectral.hpp"

#include "pnls/errors.hpp"
#include "pnls/fft.hpp"

#include <cmath>

namespace pnls {

std::size_t next_5smooth(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t f : {2u, 3u, 5u})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

GridSpec::GridSpec(int max_mode, Rational pad_factor) : K_(max_mode), pad_(pad_factor) {
    if (K_ < 1) throw DomainError("max_mode must be >= 1");
    if (pad_.num <= 0) throw DomainError("pad_factor must be positive");
    const auto n = static_cast<std::int64_t>(modes());
    const std::int64_t need = (pad_.num * n + pad_.den - 1) / pad_.den;
    M_ = next_5smooth(static_cast<std::size_t>(need < n ? n : need));
}

GridSpec GridSpec::for_exponent(int max_mode, int p) { return GridSpec(max_mode, Rational(p + 1, 2)); }

bool GridSpec::resolves_degree(int p) const { return pad_ >= Rational(p + 1, 2); }

void GridSpec::require_degree(int p) const {
    if (!resolves_degree(p))
        throw ConfigError("pad_factor " + pad_.str() + " below (p+1)/2 = " + Rational(p + 1, 2).str() +
                          " for p=" + std::to_string(p));
}

SpectralField::SpectralField(GridSpec grid) : grid_(grid), c_(grid.modes(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(GridSpec grid, std::vector<cplx> coeffs) : grid_(grid), c_(std::move(coeffs)) {
    if (c_.size() != grid_.modes())
        throw DimensionError("expected " + std::to_string(grid_.modes()) + " coefficients, got " +
                             std::to_string(c_.size()));
}

cplx SpectralField::at(int k) const {
    const int K = grid_.max_mode();
    return (k < -K || k > K) ? cplx(0.0, 0.0) : (*this)[k];
}

bool SpectralField::all_finite() const {
    for (const auto& z : c_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

SpectralField SpectralField::resized(const GridSpec& target) const {
    SpectralField out(target);
    const int K = std::min(target.max_mode(), max_mode());
    for (int k = -K; k <= K; ++k) out[k] = (*this)[k];
    return out;
}

static void check_same(const SpectralField& a, const SpectralField& b) {
    if (a.max_mode() != b.max_mode()) throw DimensionError("fields live on different windows");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
    for (auto& z : c_) z *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx a, SpectralField b) { return b *= a; }

SpectralField plane_wave(const GridSpec& grid, int k, cplx amplitude) {
    if (std::abs(k) > grid.max_mode()) throw DomainError("plane wave mode outside window");
    SpectralField f(grid);
    f[k] = amplitude;
    return f;
}

std::vector<cplx> synthesize_on(const SpectralField& field, std::size_t points) {
    const int K = field.max_mode();
    if (points < field.grid().modes())
        throw DimensionError("sample count " + std::to_string(points) + " below 2K+1");
    std::vector<cplx> spec(points, cplx(0.0, 0.0)), out;
    const auto M = static_cast<long>(points);
    for (int k = -K; k <= K; ++k) spec[static_cast<std::size_t>((k + M) % M)] = field[k];
    fft::backward(spec, out);
    return out;
}

SpectralField analyze_from(const std::vector<cplx>& samples, const GridSpec& grid) {
    const int K = grid.max_mode();
    if (samples.size() < grid.modes())
        throw DimensionError("sample count " + std::to_string(samples.size()) + " below 2K+1");
    std::vector<cplx> spec;
    fft::forward(samples, spec);
    const auto M = static_cast<long>(samples.size());
    const double inv = 1.0 / static_cast<double>(M);
    SpectralField f(grid);
    for (int k = -K; k <= K; ++k) f[k] = spec[static_cast<std::size_t>((k + M) % M)] * inv;
    return f;
}

std::vector<cplx> synthesize(const SpectralField& field) { return synthesize_on(field, field.grid().samples()); }

SpectralField analyze(const std::vector<cplx>& samples, const GridSpec& grid) {
    if (samples.size() != grid.samples())
        throw DimensionError("expected " + std::to_string(grid.samples()) + " samples, got " +
                             std::to_string(samples.size()));
    return analyze_from(samples, grid);
}

double sobolev_norm(const SpectralField& field, double s) {
    if (!std::isfinite(s)) throw DomainError("Sobolev index must be finite");
    const int K = field.max_mode();
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += std::pow(1.0 + double(k) * k, s) * std::norm(field[k]);
    return std::sqrt(acc);
}

double lp_integral(const SpectralField& field, double q) {
    if (!(q >= 1.0)) throw DomainError("L^q needs q >= 1");
    const auto u = synthesize(field);
    const bool even = q == std::floor(q) && static_cast<long>(q) % 2 == 0;
    double acc = 0.0;
    for (const auto& z : u) {
        const double a2 = std::norm(z);
        acc += even ? std::pow(a2, q / 2) : std::pow(std::sqrt(a2), q);
    }
    return acc * GridSpec::length() / static_cast<double>(u.size());
}

double lp_norm(const SpectralField& field, double q) { return std::pow(lp_integral(field, q), 1.0 / q); }

SpectralField project_band(const SpectralField& field, int n_low, int n_high) {
    if (n_low < 0 || n_high < n_low) throw DomainError("band needs 0 <= N_low <= N_high");
    SpectralField out(field.grid());
    const int K = field.max_mode();
    for (int k = -K; k <= K; ++k) {
        const int a = std::abs(k);
        if (a >= n_low && a <= n_high) out[k] = field[k];
    }
    return out;
}

SpectralField project_high(const SpectralField& field, int n) {
    return n + 1 > field.max_mode() ? SpectralField(field.grid()) : project_band(field, n + 1, field.max_mode());
}

cplx l2_pairing(const SpectralField& a, const SpectralField& b) {
    check_same(a, b);
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) acc += a.coeffs()[i] * std::conj(b.coeffs()[i]);
    return GridSpec::length() * acc;
}

}  // namespace pnls
