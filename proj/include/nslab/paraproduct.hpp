#pragma once

#include <map>
#include <vector>

#include "nslab/littlewood_paley.hpp"
#include "nslab/series.hpp"
#include "nslab/snapshot_io.hpp"

namespace nslab {

// Right-hand side of the per-shell inequality
//   d/dt ||u_q||_s + c lambda_q^2 ||u_q||_s
//     <~ sum_{p<=q} lambda_p^{3/s} ||u_p||_s sum_{|p-q|<=2} lambda_p ||u_p||_s
//        + lambda_q^{3/s+1} sum_{p>=q-2} ||u_p||_s^2
// evaluated verbatim on a full map of shell norms (p clipped to the map's
// range, lambda_{-1} = 1/2, 3/s = 0 at s = inf).
struct RhsBound {
    double low = 0.0;   // mixed low-frequency sum
    double high = 0.0;  // high-high sum
    double total() const { return low + high; }
};
RhsBound rhs_bound(const std::map<int, double>& shell_norms_at_t, int q, double s);

// Paraproduct split of the advective flux through shell q:
//   T1 = sum_{|p-q|<=2} P Delta_q(u_{<=p-2} . grad u_p)
//   T2 = sum_{|p-q|<=2} P Delta_q(u_p . grad u_{<=p-2})
//   T3 = sum_{p>=q-2}  P Delta_q(utilde_p . grad u_p),  utilde_p = u_{p-1}+u_p+u_{p+1}
// each paired with u_q |u_q|^{s-2}. signed1..3 are the signed integrals,
// i1..3 their magnitudes; the signed terms sum to the unsplit flux exactly
// (products formed on a 3n/2 padded grid, so the split is alias-free).
struct FluxTerms {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    double signed1 = 0.0, signed2 = 0.0, signed3 = 0.0;
    double unsplit_signed = 0.0;
    double unsplit_abs = 0.0;
};
FluxTerms nonlinear_flux_terms(const SpectralField& u, int q, double s, const ShellCutoffFamily& cutoffs);
// Shares the projected term fields across several weights s (s >= 2 each).
std::vector<FluxTerms> nonlinear_flux_terms_multi(const SpectralField& u, int q,
                                                  const std::vector<double>& s_list,
                                                  const ShellCutoffFamily& cutoffs);

// (-Laplace u_q, u_q |u_q|^{s-2}) / (lambda_q^2 ||u_q||_s^s); the spectral
// dissipation pairing normalized to the shell scale, in [9/16, 4] at s = 2.
double shell_dissipation_ratio(const SpectralField& u, int q, double s, const ShellCutoffFamily& cutoffs);

struct ShellInequalityRecord {
    double t = 0.0;
    int q = 0;
    double s = 2.0;
    double lhs_diff = 0.0;  // centered difference of ||u_q||_s at the midpoint
    double lhs_visc = 0.0;  // lambda_q^2 ||u_q||_s
    double rhs_low = 0.0;
    double rhs_high = 0.0;
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    bool has_flux = false;  // i-terms are evaluated at snapshot times only
};

struct FittedConstants {
    bool defined = false;
    double c_visc = 0.0;  // min dissipation pairing ratio over snapshots
    double c_rhs = 0.0;   // max (lhs_diff + c_visc lhs_visc) / rhs over records
    double c_i1 = 0.0, c_i2 = 0.0, c_i3 = 0.0;
};

struct ShellInequalityReport {
    std::vector<ShellInequalityRecord> records;
    FittedConstants constants;
    std::vector<std::string> violations;
    double noise_floor = 0.0;       // records below it are counted as vacuous
    std::size_t vacuous_records = 0;
};

// Verifies the per-shell inequality on a stored trajectory: the fine series
// supplies the finite differences, snapshots supply the dissipation constant
// and (optionally, capped by max_flux_snapshots) the paraproduct terms.
// Rejects series whose sampling is coarser than 0.1 / lambda_{q_hi}^2.
ShellInequalityReport verify_shell_inequality(const ShellNormSeries& series,
                                              const std::vector<Snapshot>& snapshots, int q_lo, int q_hi,
                                              const ShellCutoffFamily& cutoffs,
                                              std::size_t max_flux_snapshots = 0);

}  // namespace nslab
