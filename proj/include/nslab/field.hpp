#pragma once

#include <array>
#include <complex>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab {

using Complex = std::complex<double>;

// Velocity field as truncated Fourier coefficients over the full n^3 FFT
// layout (slot order j1 slowest, signed wavenumber k_i = j_i or j_i - n).
// Convention: u(x) = sum_k coeff(k) e^{i k.x}.
struct SpectralField {
    Grid grid;
    std::array<std::vector<Complex>, 3> comp;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), Complex{0.0, 0.0});
    }

    Complex& at(int c, int j1, int j2, int j3) { return comp[c][grid.index(j1, j2, j3)]; }
    const Complex& at(int c, int j1, int j2, int j3) const { return comp[c][grid.index(j1, j2, j3)]; }
};

// Same field sampled at the grid points x = 2pi j / n.
struct PhysicalField {
    Grid grid;
    std::array<std::vector<double>, 3> comp;

    PhysicalField() = default;
    explicit PhysicalField(const Grid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), 0.0);
    }

    double& at(int c, int j1, int j2, int j3) { return comp[c][grid.index(j1, j2, j3)]; }
    const double& at(int c, int j1, int j2, int j3) const { return comp[c][grid.index(j1, j2, j3)]; }
};

// Max |coeff(-k) - conj(coeff(k))| over all modes, relative to the largest
// coefficient magnitude. Zero for fields that represent real-valued data.
double hermitian_error(const SpectralField& f);

// Max |k . coeff(k)| / (|k| |coeff|) style residual: returns the largest
// |k.c(k)| divided by (|k| * max coefficient norm), so 0 means solenoidal.
double divergence_error(const SpectralField& f);

// L2-type coefficient magnitude sum_k |coeff(k)|^2 (no (2pi)^3 factor).
double coefficient_energy(const SpectralField& f);

void enforce_zero_mean(SpectralField& f);

// Zero every mode with any |k_i| > cut (used for 2/3-rule dealiasing and for
// band-limiting initial data).
void truncate_modes(SpectralField& f, int cut);

// Zero every mode with |k| > radius (ball truncation, Nyquist planes
// included). Keeps partition-of-unity reconstructions exact on the grid.
void truncate_ball(SpectralField& f, double radius);

bool has_non_finite(const SpectralField& f);

}  // namespace nslab
