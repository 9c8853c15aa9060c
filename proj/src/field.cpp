#include "nslab/field.hpp"

#include <algorithm>
#include <cmath>

namespace nslab {

double hermitian_error(const SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    double max_coeff = 0.0;
    double max_err = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (int j1 = 0; j1 < n; ++j1) {
            const int m1 = j1 == 0 ? 0 : n - j1;
            for (int j2 = 0; j2 < n; ++j2) {
                const int m2 = j2 == 0 ? 0 : n - j2;
                for (int j3 = 0; j3 < n; ++j3) {
                    const int m3 = j3 == 0 ? 0 : n - j3;
                    const Complex a = f.comp[c][g.index(j1, j2, j3)];
                    const Complex b = f.comp[c][g.index(m1, m2, m3)];
                    max_coeff = std::max(max_coeff, std::abs(a));
                    max_err = std::max(max_err, std::abs(b - std::conj(a)));
                }
            }
        }
    }
    return max_coeff > 0.0 ? max_err / max_coeff : max_err;
}

double divergence_error(const SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    double max_coeff = 0.0;
    double max_div = 0.0;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const std::size_t idx = g.index(j1, j2, j3);
                const Complex d = k1 * f.comp[0][idx] + k2 * f.comp[1][idx] + k3 * f.comp[2][idx];
                const double kn = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
                const double cn = std::sqrt(std::norm(f.comp[0][idx]) + std::norm(f.comp[1][idx]) +
                                            std::norm(f.comp[2][idx]));
                max_coeff = std::max(max_coeff, kn * cn);
                max_div = std::max(max_div, std::abs(d));
            }
        }
    }
    return max_coeff > 0.0 ? max_div / max_coeff : max_div;
}

double coefficient_energy(const SpectralField& f) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const Complex& z : f.comp[c]) sum += std::norm(z);
    return sum;
}

void enforce_zero_mean(SpectralField& f) {
    for (int c = 0; c < 3; ++c) f.comp[c][0] = Complex{0.0, 0.0};
}

void truncate_modes(SpectralField& f, int cut) {
    const Grid& g = f.grid;
    const int n = g.n;
    for (int j1 = 0; j1 < n; ++j1) {
        const int k1 = std::abs(g.wavenumber(j1));
        for (int j2 = 0; j2 < n; ++j2) {
            const int k2 = std::abs(g.wavenumber(j2));
            for (int j3 = 0; j3 < n; ++j3) {
                const int k3 = std::abs(g.wavenumber(j3));
                if (k1 > cut || k2 > cut || k3 > cut) {
                    const std::size_t idx = g.index(j1, j2, j3);
                    for (int c = 0; c < 3; ++c) f.comp[c][idx] = Complex{0.0, 0.0};
                }
            }
        }
    }
}

void truncate_ball(SpectralField& f, double radius) {
    const Grid& g = f.grid;
    const int n = g.n;
    const double r2 = radius * radius;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const bool nyquist = j1 == n / 2 || j2 == n / 2 || j3 == n / 2;
                if (nyquist || k1 * k1 + k2 * k2 + k3 * k3 > r2) {
                    const std::size_t idx = g.index(j1, j2, j3);
                    for (int c = 0; c < 3; ++c) f.comp[c][idx] = Complex{0.0, 0.0};
                }
            }
        }
    }
}

bool has_non_finite(const SpectralField& f) {
    for (int c = 0; c < 3; ++c)
        for (const Complex& z : f.comp[c])
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
    return false;
}

}  // namespace nslab
