#pragma once

#include <cmath>
#include <vector>

#include "nslab/criterion.hpp"
#include "nslab/rational.hpp"
#include "nslab/series.hpp"

namespace nslab {

// A flagged time together with the dyadic scale at which the criterion
// integral fired (p >= the cover's scale floor).
struct BadPoint {
    double t0;
    int p;
};

struct CoverInterval {
    double t0;
    int p;
    double length() const { return std::pow(2.0, -2.0 * p); }
    double left() const { return t0 - length(); }
    double right() const { return t0; }
};

struct DyadicCover {
    int scale_floor = 0;
    static constexpr double kDilation = 5.0;
    std::vector<CoverInterval> intervals;  // pairwise disjoint, kept by the greedy pass
};

// Greedy Vitali selection: candidates sorted by length descending (leftmost
// first on ties), kept iff disjoint from everything kept so far. Postcondition
// (checked): every input point lies in the 5-dilation of some kept interval.
DyadicCover vitali_cover(const std::vector<BadPoint>& bad_points, int scale_floor);

// sum_i (5 lambda_{p_i}^{-2})^d over the kept intervals; rejects d <= 0.
double premeasure_sum(const DyadicCover& cover, double d);

enum class DimensionConvention { lemma, theorem };

struct DimensionExponent {
    Rational raw;        // exact value of the chosen formula
    double value;        // max(raw, 0)
    bool clamped;        // raw <= 0 (criterion subsumed by the classical 1/2 bound)
};

// lemma: (r/2)(3/s + 2/r - alpha - 1); theorem: r (3/s + 2/r - alpha - 1).
DimensionExponent dimension_exponent(const Rational& r, const Rational& s, const Rational& alpha,
                                     DimensionConvention convention);

// Bad points at a scale floor: for every time with a fired row at some
// p >= floor, the smallest such p (the scale witnessing the covering
// condition).
std::vector<BadPoint> bad_points_at_floor(const std::vector<CriterionRow>& rows, int scale_floor);
std::vector<BadPoint> bad_points_at_floor(const CriterionReport& report, int scale_floor);

struct PremeasureRow {
    int scale_floor;
    double d;
    std::size_t interval_count;
    double sum;
};

// Premeasure sums over a grid of exponents and scale floors.
std::vector<PremeasureRow> premeasure_table(const std::vector<CriterionRow>& rows,
                                            const std::vector<double>& d_grid, int floor_lo, int floor_hi);
std::vector<PremeasureRow> premeasure_table(const CriterionReport& report, const std::vector<double>& d_grid,
                                            int floor_lo, int floor_hi);

// Estimated box-counting dimension in the parabolic metric: the d at which
// the premeasure trend over increasing scale floors changes sign
// (interpolated on the d grid); NaN when the trend never flips.
double premeasure_dimension_estimate(const std::vector<PremeasureRow>& table);

// Ratio LHS/RHS of the Jensen step at (p, t0):
//   int_{I_p} sum_{q>=p-2} ||u_q||^r  vs
//   lambda_p^{-r alpha} int_{I_p} sup_{q>=p-2} lambda_q^{r alpha} ||u_q||^r.
// The fitted K over a scan is the max ratio.
double jensen_ratio(const ShellNormSeries& series, double r, double alpha, int p, double t0);

}  // namespace nslab
