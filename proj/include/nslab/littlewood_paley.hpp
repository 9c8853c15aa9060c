#pragma once

#include <map>

#include "nslab/spectral_ops.hpp"

namespace nslab {

// Smooth radial cutoff: chi = 1 on [0, 3/4], 0 on [1, inf), glued with the
// standard exp(-1/t) bump quotient in between. phi(xi) = chi(xi/2) - chi(xi)
// has support in (3/4, 2); phi_q(xi) = phi(xi / 2^q).
double cutoff_chi(double xi);
double cutoff_phi(double xi);

struct ShellCutoffFamily {
    int q_min = -1;
    int q_max = 0;

    // Shell multiplier at radius |k|: chi(|k|) for q = -1, phi(|k|/2^q) else.
    double multiplier(int q, double k_abs) const;

    // chi(|k|) + sum_{q=0..q_max} phi_q(|k|): equals 1 on the resolved ball.
    double partition_sum(double k_abs) const;

    // Multiplier of the low-pass block u_{<= m} = sum_{q <= m} u_q, i.e.
    // chi(|k| / 2^{m+1}); zero block for m < -1.
    double lowpass_multiplier(int m, double k_abs) const;

    static double lambda(int q) { return q >= 0 ? static_cast<double>(1 << q) : 0.5; }
};

ShellCutoffFamily build_cutoffs(const Grid& grid);

struct ShellField {
    int q = 0;
    SpectralField field;
};

// Littlewood-Paley projection u_q. Rejects q outside [-1, q_max].
ShellField shell_project(const SpectralField& f, int q, const ShellCutoffFamily& cutoffs);

// Per-shell Lebesgue norms q -> ||u_q||_s for q in [-1, q_max].
std::map<int, double> shell_norms(const SpectralField& f, double s, const ShellCutoffFamily& cutoffs);

// || lambda_q^alpha ||u_q||_s ||_{l^{q_besov}} over shells, lambda_{-1} = 1/2.
// q_besov may be kInfExponent.
double besov_norm(const SpectralField& f, double alpha, double s, double q_besov,
                  const ShellCutoffFamily& cutoffs);

// ||u_q||_b / (lambda_q^{3(1/a - 1/b)} ||u_q||_a), 1 <= a <= b. Rejects the
// zero field.
double bernstein_ratio(const ShellField& f, double a, double b);

}  // namespace nslab
