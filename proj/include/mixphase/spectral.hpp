#pragma once

// Fourier-side operators on the periodic grid: transforms, diagonal
// multipliers (mollifier, Sobolev weight, smooth cutoff, derivatives,
// inverse Laplacian), Leray projection, divergence and gradient.
//
// Coefficient convention: f_hat(k) = (1/n^2) sum_j f_j exp(-i 2pi k.j/n), so
// that (1/n^2) sum_j |f_j|^2 = sum_k |f_hat(k)|^2 (mean-square Parseval).
// Real fields are kept in FFTW's half-complex r2c layout: nk = n/2+1 complex
// values per y-row, x-frequency 0..n/2; columns 0 and n/2 carry weight 1 in
// mode sums, the rest weight 2.

#include <complex>
#include <vector>

#include "mixphase/fields.hpp"
#include "mixphase/grid.hpp"

namespace mixphase {

struct SpectralField {
    Grid2 grid;
    std::vector<std::complex<double>> c;  // size n * (n/2+1)

    SpectralField() = default;
    explicit SpectralField(const Grid2& g)
        : grid(g), c(static_cast<std::size_t>(g.n) * (g.n / 2 + 1)) {}

    int nk() const { return grid.n / 2 + 1; }
    std::complex<double>& at(int kx, int iy) {
        return c[static_cast<std::size_t>(iy) * nk() + kx];
    }
    const std::complex<double>& at(int kx, int iy) const {
        return c[static_cast<std::size_t>(iy) * nk() + kx];
    }
    // weight of column kx in sums over the full integer lattice
    double column_weight(int kx) const { return (kx == 0 || kx == grid.n / 2) ? 1.0 : 2.0; }
};

struct SpectralVector2 {
    SpectralField x, y;
    SpectralVector2() = default;
    explicit SpectralVector2(const Grid2& g) : x(g), y(g) {}
    const Grid2& grid() const { return x.grid; }
};

SpectralField forward(const ScalarField& f);
ScalarField inverse(const SpectralField& f);
SpectralVector2 forward(const VectorField2& f);
VectorField2 inverse(const SpectralVector2& f);

enum class MultiplierKind {
    mollifier,          // exp(-(eps |kappa|)^2), param = eps
    lambda_s,           // (1 + |kappa|^2)^(s/2), param = s
    theta_cutoff,       // theta(|kappa| / lambda), param = lambda
    derivative_x,       // i kappa_x (Nyquist zeroed)
    derivative_y,       // i kappa_y (Nyquist zeroed)
    inverse_laplacian,  // -1/|kappa|^2, zero mode -> 0
};

struct MultiplierSpec {
    MultiplierKind kind;
    double param = 0.0;
};

// theta: 1 for r <= 1, 0 for r >= 2, smooth monotone bridge in between.
double theta_profile(double r);

std::complex<double> multiplier_value(const MultiplierSpec& m, double kappa_x, double kappa_y);

void apply_multiplier_inplace(SpectralField& f, const MultiplierSpec& m);
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

// Per-mode w_hat <- (I - kappa kappa^T/|kappa|^2) w_hat; zero mode unchanged.
void leray_project_inplace(SpectralVector2& w);
VectorField2 leray_project(const VectorField2& w);

SpectralField divergence(const SpectralVector2& w);
SpectralVector2 gradient(const SpectralField& f);
SpectralField inverse_laplacian_zero_mean(const SpectralField& f);

// Zero all modes with |k_int| > n/3 on either axis (2/3 dealiasing).
void dealias_inplace(SpectralField& f);

// max over grid of |div w| in physical space.
double max_divergence(const VectorField2& w);
// Scale reference for divergence residuals: max|w| * max wavenumber.
double divergence_scale(const VectorField2& w);

// sum_k weight |f_hat|^2 (mean-square Parseval sum)
double spectral_norm_sq(const SpectralField& f);

}  // namespace mixphase
