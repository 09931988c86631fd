#pragma once

#include "pnls/rational.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace pnls {

using cplx = std::complex<double>;

// Symmetric frequency window {-K..K} on the 2*pi torus plus a zero-padding ratio.
class GridSpec {
public:
    GridSpec(int max_mode, Rational pad_factor);

    // Padding (p+1)/2, exact for degree-p products truncated to the window.
    static GridSpec for_exponent(int max_mode, int p);

    int max_mode() const noexcept { return K_; }
    const Rational& pad_factor() const noexcept { return pad_; }
    std::size_t modes() const noexcept { return static_cast<std::size_t>(2 * K_ + 1); }
    // Smallest 5-smooth integer >= ceil(pad_factor * (2K+1)).
    std::size_t samples() const noexcept { return M_; }
    static constexpr double length() { return 6.283185307179586476925286766559; }

    bool resolves_degree(int p) const;  // pad_factor >= (p+1)/2
    void require_degree(int p) const;   // throws ConfigError

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.K_ == b.K_ && a.pad_ == b.pad_;
    }

private:
    int K_;
    Rational pad_;
    std::size_t M_;
};

std::size_t next_5smooth(std::size_t n);

// Fourier coefficients u_k = (1/2pi) * integral u e^{-ikx}, k = -K..K.
class SpectralField {
public:
    explicit SpectralField(GridSpec grid);
    SpectralField(GridSpec grid, std::vector<cplx> coeffs);

    const GridSpec& grid() const noexcept { return grid_; }
    int max_mode() const noexcept { return grid_.max_mode(); }

    cplx& operator[](int k) { return c_[static_cast<std::size_t>(k + grid_.max_mode())]; }
    const cplx& operator[](int k) const { return c_[static_cast<std::size_t>(k + grid_.max_mode())]; }
    // Zero outside the window.
    cplx at(int k) const;

    std::vector<cplx>& coeffs() noexcept { return c_; }
    const std::vector<cplx>& coeffs() const noexcept { return c_; }

    bool all_finite() const;
    // Moves the coefficients onto another window, truncating or zero-extending.
    SpectralField resized(const GridSpec& target) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(cplx a);

private:
    GridSpec grid_;
    std::vector<cplx> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx a, SpectralField b);

SpectralField plane_wave(const GridSpec& grid, int k, cplx amplitude);

// Samples u(x_j), x_j = 2*pi*j/M on the padded grid (M = grid.samples()).
std::vector<cplx> synthesize(const SpectralField& field);
SpectralField analyze(const std::vector<cplx>& samples, const GridSpec& grid);

// Same on an arbitrary number of points (M >= 2K+1). M = 2K+1 gives the collocation grid.
std::vector<cplx> synthesize_on(const SpectralField& field, std::size_t points);
SpectralField analyze_from(const std::vector<cplx>& samples, const GridSpec& grid);

double sobolev_norm(const SpectralField& field, double s);
// integral of |u|^q over the torus by padded-grid quadrature.
double lp_integral(const SpectralField& field, double q);
double lp_norm(const SpectralField& field, double q);
// Keeps N_low <= |k| <= N_high.
SpectralField project_band(const SpectralField& field, int n_low, int n_high);
// P_{>N}: keeps |k| > N.
SpectralField project_high(const SpectralField& field, int n);

// 2*pi * sum a_k conj(b_k) = integral a * conj(b).
cplx l2_pairing(const SpectralField& a, const SpectralField& b);

}  // namespace pnls
