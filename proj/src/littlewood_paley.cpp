#include "nslab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nslab {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double cutoff_chi(double xi) {
    if (xi <= 0.75) return 1.0;
    if (xi >= 1.0) return 0.0;
    const double t = (1.0 - xi) / 0.25;
    const double a = bump(t);
    const double b = bump(1.0 - t);
    return a / (a + b);
}

double cutoff_phi(double xi) { return cutoff_chi(0.5 * xi) - cutoff_chi(xi); }

double ShellCutoffFamily::multiplier(int q, double k_abs) const {
    if (q == -1) return cutoff_chi(k_abs);
    return cutoff_phi(k_abs / lambda(q));
}

double ShellCutoffFamily::partition_sum(double k_abs) const {
    double sum = cutoff_chi(k_abs);
    for (int q = 0; q <= q_max; ++q) sum += cutoff_phi(k_abs / lambda(q));
    return sum;
}

double ShellCutoffFamily::lowpass_multiplier(int m, double k_abs) const {
    if (m < -1) return 0.0;
    // Telescoping: chi(xi) + sum_{j=0..m} phi(xi/2^j) = chi(xi / 2^{m+1}).
    return cutoff_chi(k_abs / static_cast<double>(1 << (m + 1)));
}

ShellCutoffFamily build_cutoffs(const Grid& grid) {
    ShellCutoffFamily fam;
    fam.q_min = -1;
    fam.q_max = grid.max_shell();
    return fam;
}

ShellField shell_project(const SpectralField& f, int q, const ShellCutoffFamily& cutoffs) {
    if (q < cutoffs.q_min || q > cutoffs.q_max)
        throw std::invalid_argument("shell_project: shell index outside [-1, q_max] for this grid");
    const Grid& g = f.grid;
    const int n = g.n;
    ShellField out{q, SpectralField(g)};
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const double k_abs = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
                const double m = cutoffs.multiplier(q, k_abs);
                if (m == 0.0) continue;
                const std::size_t idx = g.index(j1, j2, j3);
                for (int c = 0; c < 3; ++c) out.field.comp[c][idx] = m * f.comp[c][idx];
            }
        }
    }
    return out;
}

std::map<int, double> shell_norms(const SpectralField& f, double s, const ShellCutoffFamily& cutoffs) {
    if (!(s >= 1.0)) throw std::invalid_argument("shell_norms: exponent must satisfy s >= 1");
    std::map<int, double> norms;
    for (int q = cutoffs.q_min; q <= cutoffs.q_max; ++q) {
        const ShellField shell = shell_project(f, q, cutoffs);
        norms[q] = lebesgue_norm(to_physical(shell.field), s);
    }
    return norms;
}

double besov_norm(const SpectralField& f, double alpha, double s, double q_besov,
                  const ShellCutoffFamily& cutoffs) {
    const std::map<int, double> norms = shell_norms(f, s, cutoffs);
    if (q_besov == kInfExponent) {
        double max_term = 0.0;
        for (const auto& [q, norm] : norms)
            max_term = std::max(max_term, std::pow(ShellCutoffFamily::lambda(q), alpha) * norm);
        return max_term;
    }
    if (!(q_besov >= 1.0)) throw std::invalid_argument("besov_norm: summation exponent must be >= 1");
    double sum = 0.0;
    for (const auto& [q, norm] : norms)
        sum += std::pow(std::pow(ShellCutoffFamily::lambda(q), alpha) * norm, q_besov);
    return std::pow(sum, 1.0 / q_besov);
}

double bernstein_ratio(const ShellField& f, double a, double b) {
    if (!(a >= 1.0) || !(b >= a)) throw std::invalid_argument("bernstein_ratio: need 1 <= a <= b");
    const PhysicalField phys = to_physical(f.field);
    const double norm_a = lebesgue_norm(phys, a);
    if (norm_a == 0.0) throw std::invalid_argument("bernstein_ratio: zero shell field");
    const double norm_b = lebesgue_norm(phys, b);
    const double inv_b = b == kInfExponent ? 0.0 : 1.0 / b;
    const double factor = std::pow(ShellCutoffFamily::lambda(f.q), 3.0 * (1.0 / a - inv_b));
    return norm_b / (factor * norm_a);
}

}  // namespace nslab
