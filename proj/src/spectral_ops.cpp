#include "nslab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nslab {

void leray_project_in_place(SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const std::size_t idx = g.index(j1, j2, j3);
                const double k_sq = k1 * k1 + k2 * k2 + k3 * k3;
                if (k_sq == 0.0) {
                    for (int c = 0; c < 3; ++c) f.comp[c][idx] = Complex{0.0, 0.0};
                    continue;
                }
                const Complex k_dot = (k1 * f.comp[0][idx] + k2 * f.comp[1][idx] + k3 * f.comp[2][idx]) / k_sq;
                f.comp[0][idx] -= k1 * k_dot;
                f.comp[1][idx] -= k2 * k_dot;
                f.comp[2][idx] -= k3 * k_dot;
            }
        }
    }
}

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    leray_project_in_place(out);
    return out;
}

double lebesgue_norm(const PhysicalField& f, double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("lebesgue_norm: exponent must satisfy s >= 1");
    const std::size_t size = f.grid.size();
    if (s == kInfExponent) {
        double max_sq = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double m = f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] +
                             f.comp[2][i] * f.comp[2][i];
            max_sq = std::max(max_sq, m);
        }
        return std::sqrt(max_sq);
    }
    double sum = 0.0;
    if (s == 2.0) {
        for (std::size_t i = 0; i < size; ++i)
            sum += f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] + f.comp[2][i] * f.comp[2][i];
    } else {
        const double half_s = 0.5 * s;
        for (std::size_t i = 0; i < size; ++i) {
            const double m = f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] +
                             f.comp[2][i] * f.comp[2][i];
            sum += std::pow(m, half_s);
        }
    }
    return std::pow(f.grid.cell_volume() * sum, 1.0 / s);
}

double l2_norm(const SpectralField& f) {
    const double vol = kTwoPi * kTwoPi * kTwoPi;
    return std::sqrt(vol * coefficient_energy(f));
}

double gradient_norm_l2(const SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    double sum = 0.0;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const std::size_t idx = g.index(j1, j2, j3);
                const double k_sq = k1 * k1 + k2 * k2 + k3 * k3;
                sum += k_sq * (std::norm(f.comp[0][idx]) + std::norm(f.comp[1][idx]) +
                               std::norm(f.comp[2][idx]));
            }
        }
    }
    return std::sqrt(kTwoPi * kTwoPi * kTwoPi * sum);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner_product: grid mismatch");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        const std::size_t size = f.comp[c].size();
        for (std::size_t i = 0; i < size; ++i) {
            const Complex z = f.comp[c][i] * std::conj(g.comp[c][i]);
            sum += z.real();
        }
    }
    return kTwoPi * kTwoPi * kTwoPi * sum;
}

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0..2");
    const Grid& g = f.grid;
    const int n = g.n;
    SpectralField out(g);
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            for (int j3 = 0; j3 < n; ++j3) {
                const int j[3] = {j1, j2, j3};
                const double k = g.wavenumber(j[axis]);
                const std::size_t idx = g.index(j1, j2, j3);
                const Complex ik{0.0, k};
                for (int c = 0; c < 3; ++c) out.comp[c][idx] = ik * f.comp[c][idx];
            }
        }
    }
    return out;
}

SpectralField single_mode_field(const Grid& g, int m) {
    if (m <= 0 || m >= g.n / 2) throw std::invalid_argument("single_mode_field: need 0 < m < n/2");
    SpectralField f(g);
    // sin(m x3) = (e^{i m x3} - e^{-i m x3}) / (2i)
    f.at(0, 0, 0, m) = Complex{0.0, -0.5};
    f.at(0, 0, 0, g.n - m) = Complex{0.0, 0.5};
    return f;
}

SpectralField taylor_green_field(const Grid& g) {
    SpectralField f(g);
    const int n = g.n;
    // sin x1 cos x2 = 1/(4i) (e^{i(x1+x2)} + e^{i(x1-x2)} - e^{i(-x1+x2)} - e^{-i(x1+x2)})
    const Complex quarter_over_i{0.0, -0.25};
    f.at(0, 1, 1, 0) += quarter_over_i;
    f.at(0, 1, n - 1, 0) += quarter_over_i;
    f.at(0, n - 1, 1, 0) -= quarter_over_i;
    f.at(0, n - 1, n - 1, 0) -= quarter_over_i;
    // -cos x1 sin x2
    f.at(1, 1, 1, 0) -= quarter_over_i;
    f.at(1, 1, n - 1, 0) += quarter_over_i;
    f.at(1, n - 1, 1, 0) -= quarter_over_i;
    f.at(1, n - 1, n - 1, 0) += quarter_over_i;
    return f;
}

namespace {

// Box-Muller on explicit 53-bit uniforms: identical streams on every
// platform, unlike std::normal_distribution.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = kTwoPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

SpectralField random_field(const Grid& g, std::uint64_t seed, double slope, double kc) {
    // White noise in physical space transforms to an exactly Hermitian
    // spectrum; shaping is a radial multiplier on top.
    GaussianStream gauss(seed);
    PhysicalField noise(g);
    for (int c = 0; c < 3; ++c)
        for (double& v : noise.comp[c]) v = gauss.next();
    SpectralField f = to_spectral(noise);

    const int n = g.n;
    if (slope != 0.0 || kc > 0.0) {
        for (int j1 = 0; j1 < n; ++j1) {
            const double k1 = g.wavenumber(j1);
            for (int j2 = 0; j2 < n; ++j2) {
                const double k2 = g.wavenumber(j2);
                for (int j3 = 0; j3 < n; ++j3) {
                    const double k3 = g.wavenumber(j3);
                    const double k_sq = k1 * k1 + k2 * k2 + k3 * k3;
                    if (k_sq == 0.0) continue;
                    double amp = slope != 0.0 ? std::pow(std::sqrt(k_sq), slope) : 1.0;
                    if (kc > 0.0) amp *= std::exp(-k_sq / (kc * kc));
                    const std::size_t idx = g.index(j1, j2, j3);
                    for (int c = 0; c < 3; ++c) f.comp[c][idx] *= amp;
                }
            }
        }
    }
    enforce_zero_mean(f);
    truncate_ball(f, 0.5 * n);
    return f;
}

SpectralField random_divfree_field(const Grid& g, std::uint64_t seed, double slope, double kc, double amplitude) {
    SpectralField f = random_field(g, seed, slope, kc);
    leray_project_in_place(f);
    const double norm = l2_norm(f);
    if (norm == 0.0) throw std::runtime_error("random_divfree_field: degenerate draw");
    const double scale = amplitude / norm;
    for (int c = 0; c < 3; ++c)
        for (Complex& z : f.comp[c]) z *= scale;
    return f;
}

}  // namespace nslab
