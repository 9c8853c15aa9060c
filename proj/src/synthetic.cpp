#include "nslab/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {

double shell_amplitude(double amplitude, double s, int q) {
    return amplitude * std::pow(2.0, q * (1.0 - 3.0 / s));
}

}  // namespace

ShellNormSeries synthetic_focal_series(const FocalSignalParams& p) {
    if (!(p.dt > 0.0) || !(p.t_begin < p.t_end) || p.q_lo < 0 || p.q_lo > p.q_hi)
        throw std::invalid_argument("synthetic_focal_series: bad parameters");
    ShellNormSeries series;
    series.s = p.s;
    series.q_min = -1;
    series.q_max = p.q_hi;
    series.source = "synthetic-focal";
    const std::size_t steps = static_cast<std::size_t>(std::floor((p.t_end - p.t_begin) / p.dt)) + 1;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = p.t_begin + static_cast<double>(i) * p.dt;
        std::vector<double> row(series.shell_count(), 0.0);
        if (t < p.t_star) {
            const double gap = p.t_star - t;
            // Active shell: largest q with t >= t_star - lambda_q^{-2},
            // i.e. 4^{-q} >= gap.
            const double q_real = -std::log2(gap) / 2.0;
            int q_active = static_cast<int>(std::floor(q_real));
            if (q_active > p.q_hi) q_active = p.q_hi;  // final dwell extends to t_star
            if (q_active >= p.q_lo) {
                row[static_cast<std::size_t>(q_active - series.q_min)] =
                    shell_amplitude(p.amplitude, p.s, q_active);
            }
        }
        series.times.push_back(t);
        series.norms.push_back(std::move(row));
    }
    series.validate();
    return series;
}

double focal_integral_at_star(const FocalSignalParams& p, double r, int scale) {
    // Lambda_scale(t_star) for the idealized (continuum) signal: shells
    // q in [max(scale, q_lo), q_hi] contribute (3/4) 4^{-q} (plus the final
    // dwell closing the last quarter) times amplitude^r lambda_q^{r(1-3/s)}.
    const double exponent = 3.0 * r / p.s + 2.0 - r;  // r(3/s + 2/r - 1)
    double mass = 0.0;
    for (int q = std::max(scale, p.q_lo); q <= p.q_hi; ++q) {
        const double window = q == p.q_hi ? std::pow(4.0, -q) : 0.75 * std::pow(4.0, -q);
        mass += window * std::pow(shell_amplitude(p.amplitude, p.s, q), r);
    }
    return std::pow(2.0, exponent * scale) * mass;
}

bool cantor_member(double x, int generation) {
    if (x < 0.0 || x > 1.0) return false;
    double y = x;
    for (int g = 0; g < generation; ++g) {
        if (y <= 0.25) {
            y *= 4.0;
        } else if (y >= 0.75) {
            y = (y - 0.75) * 4.0;
        } else {
            return false;
        }
    }
    return true;
}

ShellNormSeries synthetic_cantor_series(const CantorSignalParams& p) {
    if (!(p.dt > 0.0) || p.q_lo < 0 || p.q_lo > p.q_hi)
        throw std::invalid_argument("synthetic_cantor_series: bad parameters");
    ShellNormSeries series;
    series.s = p.s;
    series.q_min = -1;
    series.q_max = p.q_hi;
    series.source = "synthetic-cantor";
    const double t_end = p.t_begin + 1.0 + p.t_pad;
    const std::size_t steps = static_cast<std::size_t>(std::floor((t_end - p.t_begin) / p.dt)) + 1;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = p.t_begin + static_cast<double>(i) * p.dt;
        const double x = t - p.t_begin;
        std::vector<double> row(series.shell_count(), 0.0);
        for (int q = p.q_lo; q <= p.q_hi; ++q) {
            if (cantor_member(x, q))
                row[static_cast<std::size_t>(q - series.q_min)] = shell_amplitude(p.amplitude, p.s, q);
        }
        series.times.push_back(t);
        series.norms.push_back(std::move(row));
    }
    series.validate();
    return series;
}

}  // namespace nslab
