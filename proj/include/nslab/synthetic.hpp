#pragma once

#include "nslab/series.hpp"

namespace nslab {

// Self-similar focusing signal: shell q carries ||u_q||_s = amplitude *
// lambda_q^{1-3/s} on the dwell window [t_star - lambda_q^{-2},
// t_star - lambda_{q+1}^{-2}) and nothing elsewhere, so the criterion
// integral saturates at t_star uniformly in p and decays away from it.
struct FocalSignalParams {
    double t_star = 0.5;
    double amplitude = 0.15;
    double s = 10.0 / 3.0;
    int q_lo = 2;
    int q_hi = 7;
    double dt = 1e-4;
    double t_begin = 0.0;
    double t_end = 0.75;
};
ShellNormSeries synthetic_focal_series(const FocalSignalParams& p);

// Exact criterion integral of the focal signal at its focal time (piecewise
// geometric sum; independent of the sampled series).
double focal_integral_at_star(const FocalSignalParams& p, double r, int scale);

// Cantor-supported signal: shell q is active on the generation-q intervals
// of the 4-adic IFS {x/4, x/4 + 3/4} on [t_begin, t_begin + 1]; the set of
// accumulation times has box dimension 1/2 in the parabolic scaling.
struct CantorSignalParams {
    double t_begin = 0.0;
    double amplitude = 0.3;
    double s = 10.0 / 3.0;
    int q_lo = 0;
    int q_hi = 7;
    double dt = 1e-4;
    double t_pad = 0.05;  // flat tail after the construction window
};
ShellNormSeries synthetic_cantor_series(const CantorSignalParams& p);

// Membership of x (relative position in [0,1]) in the generation-g interval
// set of the 4-adic Cantor construction.
bool cantor_member(double x, int generation);

}  // namespace nslab
