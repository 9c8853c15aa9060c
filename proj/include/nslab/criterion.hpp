#pragma once

#include <functional>
#include <map>
#include <vector>

#include "nslab/rational.hpp"
#include "nslab/series.hpp"

namespace nslab {

struct CriterionParams {
    double r = 10.0 / 3.0;   // time exponent, > 2
    double s = 10.0 / 3.0;   // space exponent, > 3
    double alpha = 0.0;      // smoothness weight, >= 0
    double delta = 0.1;      // threshold, in (0,1)
    int p_min = 2;
    int p_max = 6;
    int limsup_window = 3;   // finite-data proxy: max over the K largest scales

    void validate() const;
    double delta_pow_r() const;
    // r (3/s + 2/r - 1) = 3r/s + 2 - r, the interval scaling exponent.
    double scaling_exponent() const;
};

// Exact rational form of r (3/s + 2/r - 1); equals 5/3 at r = s = 10/3.
Rational criterion_scaling_exponent(const Rational& r, const Rational& s);

struct TimeInterval {
    double left;
    double right;
    double length() const { return right - left; }
};

// I_p(t0) = [t0 - lambda_p^{-2}, t0].
TimeInterval dyadic_interval(int p, double t0);

// Trapezoid of integrand(norm_row) over [a, b] with linear interpolation at
// the interval endpoints. Rejects intervals leaving the sampled range or
// containing fewer than min_samples samples.
double series_trapezoid(const ShellNormSeries& series, double a, double b,
                        const std::function<double(const std::vector<double>&)>& integrand,
                        int min_samples = 8);

// Lambda_p(t0) = lambda_p^{r(3/s+2/r-1)} int_{I_p(t0)} sum_{q>=p-2} ||u_q||_s^r dt.
double criterion_integral(const ShellNormSeries& series, const CriterionParams& params, int p, double t0);

struct CriterionRow {
    double t0;
    int p;
    double lambda_p;
    double integral;
    bool fired;  // Lambda_p(t0) >= delta^r
};

struct CriterionSummary {
    double t0;
    double proxy;  // max Lambda over the limsup_window largest scanned scales
    bool bad;
};

struct CriterionReport {
    CriterionParams params;
    std::vector<CriterionRow> rows;
    std::vector<CriterionSummary> summaries;

    std::vector<double> bad_times() const;
};

// Sample times usable as t0 (at least lambda_{p_min}^{-2} after the series
// start), thinned by stride.
std::vector<double> default_t0_grid(const ShellNormSeries& series, const CriterionParams& params,
                                    std::size_t stride = 1);

CriterionReport detect_bad_points(const ShellNormSeries& series, const CriterionParams& params,
                                  const std::vector<double>& t0_grid);

// q -> lambda_q^{3/s-1} sup_{I_q(t0)} ||u_q||_s over the scanned scales.
std::map<int, double> critical_quantity(const ShellNormSeries& series, const CriterionParams& params,
                                        double t0);

// Envelope for X = ||u_q||_s^{r-1}:
//   X(tau_p) e^{-c lambda_q^2 dt} + C (1 - e^{-c lambda_q^2 dt}) delta^r
//     lambda_q^{3/s-1} lambda_p^{r(1-3/s)}.
// initial_norm is ||u_q(tau_p)||_s; c is the decay rate of the (r-1) power
// (equal to (r-1) nu for exact single-shell viscous decay).
double gronwall_envelope(double initial_norm, int q, int p, const CriterionParams& params, double c,
                         double C, double dt_elapsed);

// Smallest M with sum_{q >= p-2} (lambda_q^{3/s-1} lambda_p^{r(1-3/s)})^{r/(r-1)}
// <= M lambda_p^{r(1-3/s)} (p-independent closed form of the geometric sum).
double criterion_M(double r, double s);

// delta admissible for the Gronwall bookkeeping: 1 / (64 M C).
double admissible_delta(double M, double C);

}  // namespace nslab
