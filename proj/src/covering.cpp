#include "nslab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace nslab {

namespace {

bool intervals_intersect(const CoverInterval& a, const CoverInterval& b) {
    return a.left() <= b.right() && b.left() <= a.right();
}

bool dilation_contains(const CoverInterval& big, double t) {
    const double center = 0.5 * (big.left() + big.right());
    const double radius = 0.5 * DyadicCover::kDilation * big.length();
    return t >= center - radius && t <= center + radius;
}

}  // namespace

DyadicCover vitali_cover(const std::vector<BadPoint>& bad_points, int scale_floor) {
    DyadicCover cover;
    cover.scale_floor = scale_floor;
    if (bad_points.empty()) return cover;

    std::vector<CoverInterval> candidates;
    candidates.reserve(bad_points.size());
    for (const auto& bp : bad_points) {
        if (bp.p < scale_floor)
            throw std::invalid_argument("vitali_cover: bad point carries scale below the floor");
        candidates.push_back({bp.t0, bp.p});
    }
    // Length descending = scale ascending; leftmost wins ties.
    std::sort(candidates.begin(), candidates.end(), [](const CoverInterval& a, const CoverInterval& b) {
        if (a.p != b.p) return a.p < b.p;
        return a.t0 < b.t0;
    });

    for (const auto& cand : candidates) {
        bool disjoint = true;
        for (const auto& kept : cover.intervals) {
            if (intervals_intersect(cand, kept)) {
                disjoint = false;
                break;
            }
        }
        if (disjoint) cover.intervals.push_back(cand);
    }

    // Vitali postcondition: the 5-dilations of the kept intervals cover every
    // input point. Violation would mean the greedy pass is broken.
    for (const auto& bp : bad_points) {
        bool covered = false;
        for (const auto& kept : cover.intervals) {
            if (dilation_contains(kept, bp.t0)) {
                covered = true;
                break;
            }
        }
        if (!covered) throw std::logic_error("vitali_cover: dilation fails to cover an input point");
    }
    return cover;
}

double premeasure_sum(const DyadicCover& cover, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("premeasure_sum: exponent must be positive");
    double sum = 0.0;
    for (const auto& iv : cover.intervals) sum += std::pow(DyadicCover::kDilation * iv.length(), d);
    return sum;
}

DimensionExponent dimension_exponent(const Rational& r, const Rational& s, const Rational& alpha,
                                     DimensionConvention convention) {
    if (!(r > Rational(2))) throw std::invalid_argument("dimension_exponent: need r > 2");
    if (!(s > Rational(3))) throw std::invalid_argument("dimension_exponent: need s > 3");
    if (alpha < Rational(0)) throw std::invalid_argument("dimension_exponent: need alpha >= 0");
    const Rational form = Rational(3) / s + Rational(2) / r - alpha - Rational(1);
    const Rational raw =
        convention == DimensionConvention::lemma ? r / Rational(2) * form : r * form;
    DimensionExponent out;
    out.raw = raw;
    out.clamped = raw <= Rational(0);
    out.value = out.clamped ? 0.0 : raw.to_double();
    return out;
}

std::vector<BadPoint> bad_points_at_floor(const std::vector<CriterionRow>& rows, int scale_floor) {
    // Smallest fired scale >= floor per time.
    std::map<double, int> fired;
    for (const auto& row : rows) {
        if (!row.fired || row.p < scale_floor) continue;
        auto it = fired.find(row.t0);
        if (it == fired.end() || row.p < it->second) fired[row.t0] = row.p;
    }
    std::vector<BadPoint> out;
    out.reserve(fired.size());
    for (const auto& [t0, p] : fired) out.push_back({t0, p});
    return out;
}

std::vector<BadPoint> bad_points_at_floor(const CriterionReport& report, int scale_floor) {
    return bad_points_at_floor(report.rows, scale_floor);
}

std::vector<PremeasureRow> premeasure_table(const CriterionReport& report, const std::vector<double>& d_grid,
                                            int floor_lo, int floor_hi) {
    if (floor_lo > floor_hi) throw std::invalid_argument("premeasure_table: bad floor range");
    std::vector<PremeasureRow> out;
    for (int floor = floor_lo; floor <= floor_hi; ++floor) {
        const DyadicCover cover = vitali_cover(bad_points_at_floor(report, floor), floor);
        for (double d : d_grid)
            out.push_back({floor, d, cover.intervals.size(), premeasure_sum(cover, d)});
    }
    return out;
}

double premeasure_dimension_estimate(const std::vector<PremeasureRow>& table) {
    // For each d, the trend is the log2 slope of the premeasure over the
    // scale-floor span; the dimension estimate is where it crosses zero.
    std::map<double, std::map<int, double>> by_d;
    for (const auto& row : table) by_d[row.d][row.scale_floor] = row.sum;
    double prev_d = 0.0, prev_slope = 0.0;
    bool have_prev = false;
    for (const auto& [d, sums] : by_d) {
        if (sums.size() < 2) continue;
        const auto first = *sums.begin();
        const auto last = *sums.rbegin();
        if (first.second <= 0.0 || last.second <= 0.0) continue;
        const double slope =
            (std::log2(last.second) - std::log2(first.second)) / (last.first - first.first);
        if (have_prev && prev_slope > 0.0 && slope <= 0.0) {
            // Linear interpolation of the zero crossing in d.
            const double w = prev_slope / (prev_slope - slope);
            return prev_d + w * (d - prev_d);
        }
        prev_d = d;
        prev_slope = slope;
        have_prev = true;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double jensen_ratio(const ShellNormSeries& series, double r, double alpha, int p, double t0) {
    if (!(alpha > 0.0)) throw std::invalid_argument("jensen_ratio: needs alpha > 0");
    const TimeInterval iv = dyadic_interval(p, t0);
    const int q_start = std::max(p - 2, series.q_min);
    const std::size_t offset = static_cast<std::size_t>(q_start - series.q_min);

    const auto sum_integrand = [&](const std::vector<double>& row) {
        double sum = 0.0;
        for (std::size_t j = offset; j < row.size(); ++j) sum += std::pow(row[j], r);
        return sum;
    };
    const auto sup_integrand = [&](const std::vector<double>& row) {
        double sup = 0.0;
        for (std::size_t j = offset; j < row.size(); ++j) {
            const int q = series.q_min + static_cast<int>(j);
            const double weight = std::pow(2.0, q * r * alpha);
            sup = std::max(sup, weight * std::pow(row[j], r));
        }
        return sup;
    };
    const double lhs = series_trapezoid(series, iv.left, iv.right, sum_integrand);
    const double rhs_integral = series_trapezoid(series, iv.left, iv.right, sup_integrand);
    const double rhs = std::pow(2.0, -r * alpha * p) * rhs_integral;
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

}  // namespace nslab
