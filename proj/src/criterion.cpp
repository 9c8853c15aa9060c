#include "nslab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nslab {

void CriterionParams::validate() const {
    if (!(r > 2.0)) throw std::invalid_argument("CriterionParams: need r > 2");
    if (!(s > 3.0)) throw std::invalid_argument("CriterionParams: need s > 3");
    if (!(alpha >= 0.0)) throw std::invalid_argument("CriterionParams: need alpha >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("CriterionParams: need delta in (0,1)");
    if (p_min > p_max || p_min < -1) throw std::invalid_argument("CriterionParams: bad scale range");
    if (limsup_window < 1) throw std::invalid_argument("CriterionParams: limsup window must be >= 1");
}

double CriterionParams::delta_pow_r() const { return std::pow(delta, r); }

double CriterionParams::scaling_exponent() const { return 3.0 * r / s + 2.0 - r; }

Rational criterion_scaling_exponent(const Rational& r, const Rational& s) {
    // r (3/s + 2/r - 1)
    return r * (Rational(3) / s + Rational(2) / r - Rational(1));
}

TimeInterval dyadic_interval(int p, double t0) {
    const double len = std::pow(2.0, -2.0 * p);
    return {t0 - len, t0};
}

double series_trapezoid(const ShellNormSeries& series, double a, double b,
                        const std::function<double(const std::vector<double>&)>& integrand,
                        int min_samples) {
    const auto& times = series.times;
    if (times.empty()) throw std::invalid_argument("series_trapezoid: empty series");
    const double span_tol = 1e-12 * std::max(1.0, std::abs(b));
    if (a < times.front() - span_tol || b > times.back() + span_tol)
        throw std::invalid_argument("series_trapezoid: interval exits the sampled range");
    if (!(a < b)) throw std::invalid_argument("series_trapezoid: empty interval");

    const auto lo_it = std::lower_bound(times.begin(), times.end(), a - span_tol);
    const auto hi_it = std::upper_bound(times.begin(), times.end(), b + span_tol);
    const std::size_t lo = static_cast<std::size_t>(lo_it - times.begin());
    const std::size_t hi = static_cast<std::size_t>(hi_it - times.begin());  // one past
    const long inside = static_cast<long>(hi) - static_cast<long>(lo);
    if (inside < min_samples) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "series_trapezoid: %ld samples in interval of length %.3g, need >= %d "
                      "(sample spacing <= %.3g)",
                      inside, b - a, min_samples, (b - a) / min_samples);
        throw std::invalid_argument(msg);
    }

    // Values at the samples inside plus linearly interpolated endpoints.
    const auto value_at_index = [&](std::size_t i) { return integrand(series.norms[i]); };
    const auto interp = [&](double t) {
        const auto it = std::upper_bound(times.begin(), times.end(), t);
        std::size_t j = static_cast<std::size_t>(it - times.begin());
        if (j == 0) return value_at_index(0);
        if (j >= times.size()) return value_at_index(times.size() - 1);
        const double t0 = times[j - 1], t1 = times[j];
        const double w = (t - t0) / (t1 - t0);
        return (1.0 - w) * value_at_index(j - 1) + w * value_at_index(j);
    };

    double sum = 0.0;
    double prev_t = a;
    double prev_v = interp(a);
    for (std::size_t i = lo; i < hi; ++i) {
        const double t = times[i];
        if (t <= prev_t) continue;
        if (t > b) break;
        const double v = value_at_index(i);
        sum += 0.5 * (t - prev_t) * (prev_v + v);
        prev_t = t;
        prev_v = v;
    }
    if (prev_t < b) {
        const double v = interp(b);
        sum += 0.5 * (b - prev_t) * (prev_v + v);
    }
    return sum;
}

double criterion_integral(const ShellNormSeries& series, const CriterionParams& params, int p, double t0) {
    params.validate();
    if (std::abs(series.s - params.s) > 1e-12 * std::max(1.0, std::abs(params.s)))
        throw std::invalid_argument("criterion_integral: series exponent does not match params.s");
    const TimeInterval iv = dyadic_interval(p, t0);
    const int q_start = std::max(p - 2, series.q_min);
    const std::size_t offset = static_cast<std::size_t>(q_start - series.q_min);
    const double r = params.r;
    const auto integrand = [&](const std::vector<double>& row) {
        double sum = 0.0;
        for (std::size_t j = offset; j < row.size(); ++j) sum += std::pow(row[j], r);
        return sum;
    };
    const double integral = series_trapezoid(series, iv.left, iv.right, integrand);
    return std::pow(2.0, params.scaling_exponent() * p) * integral;
}

std::vector<double> CriterionReport::bad_times() const {
    std::vector<double> out;
    for (const auto& s : summaries)
        if (s.bad) out.push_back(s.t0);
    return out;
}

std::vector<double> default_t0_grid(const ShellNormSeries& series, const CriterionParams& params,
                                    std::size_t stride) {
    params.validate();
    if (stride == 0) stride = 1;
    const double min_t0 = series.times.front() + std::pow(2.0, -2.0 * params.p_min);
    std::vector<double> grid;
    for (std::size_t i = 0; i < series.times.size(); i += stride) {
        const double t = series.times[i];
        if (t >= min_t0 - 1e-12) grid.push_back(t);
    }
    return grid;
}

CriterionReport detect_bad_points(const ShellNormSeries& series, const CriterionParams& params,
                                  const std::vector<double>& t0_grid) {
    params.validate();
    series.validate();
    CriterionReport report;
    report.params = params;
    const double threshold = params.delta_pow_r();
    const int window_lo = std::max(params.p_min, params.p_max - params.limsup_window + 1);
    for (double t0 : t0_grid) {
        double proxy = 0.0;
        for (int p = params.p_min; p <= params.p_max; ++p) {
            const double integral = criterion_integral(series, params, p, t0);
            report.rows.push_back({t0, p, std::pow(2.0, p), integral, integral >= threshold});
            if (p >= window_lo) proxy = std::max(proxy, integral);
        }
        report.summaries.push_back({t0, proxy, proxy >= threshold});
    }
    return report;
}

std::map<int, double> critical_quantity(const ShellNormSeries& series, const CriterionParams& params,
                                        double t0) {
    params.validate();
    series.validate();
    std::map<int, double> out;
    const auto& times = series.times;
    for (int q = params.p_min; q <= params.p_max; ++q) {
        if (q < series.q_min || q > series.q_max)
            throw std::invalid_argument("critical_quantity: shell outside series range");
        const TimeInterval iv = dyadic_interval(q, t0);
        const double span_tol = 1e-12 * std::max(1.0, std::abs(t0));
        if (iv.left < times.front() - span_tol || iv.right > times.back() + span_tol)
            throw std::invalid_argument("critical_quantity: interval exits the sampled range");
        double sup = 0.0;
        bool seen = false;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < iv.left - span_tol) continue;
            if (times[i] > iv.right + span_tol) break;
            sup = std::max(sup, series.norm_at(i, q));
            seen = true;
        }
        if (!seen) throw std::invalid_argument("critical_quantity: no samples in interval");
        const double weight = std::pow(2.0, (3.0 / params.s - 1.0) * q);
        out[q] = weight * sup;
    }
    return out;
}

double gronwall_envelope(double initial_norm, int q, int p, const CriterionParams& params, double c,
                         double C, double dt_elapsed) {
    params.validate();
    if (!(dt_elapsed >= 0.0)) throw std::invalid_argument("gronwall_envelope: need t >= tau_p");
    const double r = params.r;
    const double lam_q = std::pow(2.0, q);
    const double lam_p_pow = std::pow(2.0, p * r * (1.0 - 3.0 / params.s));
    const double lam_q_pow = std::pow(lam_q, 3.0 / params.s - 1.0);
    const double decay = std::exp(-c * lam_q * lam_q * dt_elapsed);
    const double initial_pow = std::pow(initial_norm, r - 1.0);
    return initial_pow * decay + C * (1.0 - decay) * params.delta_pow_r() * lam_q_pow * lam_p_pow;
}

double criterion_M(double r, double s) {
    if (!(r > 2.0) || !(s > 3.0)) throw std::invalid_argument("criterion_M: need r > 2, s > 3");
    const double beta = (1.0 - 3.0 / s) * r / (r - 1.0);
    return std::pow(2.0, 2.0 * beta) / (1.0 - std::pow(2.0, -beta));
}

double admissible_delta(double M, double C) {
    if (!(M > 0.0) || !(C > 0.0)) throw std::invalid_argument("admissible_delta: constants must be positive");
    return 1.0 / (64.0 * M * C);
}

}  // namespace nslab
