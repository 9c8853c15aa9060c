#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "nslab/covering.hpp"
#include "nslab/manifest.hpp"
#include "nslab/paraproduct.hpp"
#include "nslab/series_io.hpp"
#include "nslab/snapshot_io.hpp"
#include "nslab/solver.hpp"

namespace nslab {

// Plain key = value configuration ('#' starts a comment). Unknown keys are
// usage errors.
std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path);
SolverConfig config_from_map(const std::map<std::string, std::string>& kv);
SolverConfig load_config(const std::filesystem::path& path);

// A trajectory directory as written by run(): manifest (hash-verified),
// snapshots sorted by time, the stored series and the energy ledger.
struct Trajectory {
    std::filesystem::path dir;
    RunManifest manifest;
    std::vector<Snapshot> snapshots;
    std::vector<ShellNormSeries> series;
    std::vector<EnergyRow> energy;

    const ShellNormSeries& series_for(double s) const;
};
Trajectory load_trajectory(const std::filesystem::path& dir, bool verify_hashes = true);

// shells: recompute per-shell norms from the stored snapshots (coarser than
// the inline series, same schema).
std::vector<ShellNormSeries> shells_from_snapshots(const std::vector<Snapshot>& snapshots,
                                                   const std::vector<double>& exponents);

// --- verify checks (shared between the CLI and the acceptance suite) ---
struct CheckResult {
    std::string name;
    bool pass = false;
    double metric = 0.0;     // measured quantity the threshold applies to
    double threshold = 0.0;
    std::string detail;
};

CheckResult check_partition_of_unity(int n, int trials);
CheckResult check_bernstein(int n, int trials);
CheckResult check_energy(const Trajectory& trajectory);
CheckResult check_decomposition_exactness(int n, int trials, const std::vector<double>& s_list);
CheckResult check_shell_inequality(const Trajectory& trajectory, double s, int q_lo, int q_hi,
                                   std::size_t flux_snapshots, ShellInequalityReport* out_report = nullptr);

// --- report: delta-consistency chain and run summary ---
struct ReportSummary {
    double r = 0.0;
    double s = 0.0;
    FittedConstants constants;
    double M = 0.0;
    double delta_admissible = 0.0;  // 1 / (64 M c_rhs)
    std::size_t record_count = 0;
    std::size_t violation_count = 0;
    std::size_t bad_time_count = 0;        // from the criterion CSV, if given
    double premeasure_dimension = 0.0;     // NaN when no trend flip
    bool has_premeasure = false;
};

ReportSummary make_report(const Trajectory& trajectory, double r, double s, int q_lo, int q_hi,
                          const std::optional<std::filesystem::path>& criterion_csv,
                          const std::optional<std::filesystem::path>& premeasure_csv);
void write_report_json(const ReportSummary& summary, const std::filesystem::path& path);

}  // namespace nslab
