#include "nslab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "nslab/report_io.hpp"
#include "nslab/synthetic.hpp"

namespace nslab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') throw UsageError("config: bad number for " + key + ": " + value);
    return v;
}

long long to_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw UsageError("config: bad integer for " + key + ": " + value);
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw UsageError("config: bad flag for " + key + ": " + value);
}

std::vector<double> parse_exponent_list(const std::string& value) {
    std::vector<double> out;
    std::string current;
    const auto flush = [&]() {
        const std::string token = trim(current);
        if (!token.empty()) out.push_back(parse_exponent(token));
        current.clear();
    };
    for (char ch : value) {
        if (ch == ',') {
            flush();
        } else {
            current += ch;
        }
    }
    flush();
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ": expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty()) throw UsageError(path.string() + ": empty key at line " + std::to_string(line_no));
        kv[key] = value;
    }
    return kv;
}

SolverConfig config_from_map(const std::map<std::string, std::string>& kv) {
    SolverConfig config;
    int n = 0;
    double nu = 1.0;
    for (const auto& [key, value] : kv) {
        if (key == "n") {
            n = static_cast<int>(to_int(key, value));
        } else if (key == "nu") {
            nu = to_double(key, value);
        } else if (key == "dt") {
            config.dt = to_double(key, value);
        } else if (key == "t_end") {
            config.t_end = to_double(key, value);
        } else if (key == "mode") {
            if (value == "full") {
                config.mode = SolverMode::full;
            } else if (value == "stokes") {
                config.mode = SolverMode::stokes;
            } else {
                throw UsageError("config: mode must be full or stokes");
            }
        } else if (key == "dealias") {
            config.dealias = to_bool(key, value);
        } else if (key == "snapshot_stride") {
            config.snapshot_stride = static_cast<int>(to_int(key, value));
        } else if (key == "series_stride") {
            config.series_stride = static_cast<int>(to_int(key, value));
        } else if (key == "series.s") {
            config.series_exponents = parse_exponent_list(value);
        } else if (key == "ic.name") {
            config.ic.name = value;
        } else if (key == "ic.seed") {
            config.ic.seed = static_cast<std::uint64_t>(to_int(key, value));
        } else if (key == "ic.slope") {
            config.ic.slope = to_double(key, value);
        } else if (key == "ic.kc") {
            config.ic.kc = to_double(key, value);
        } else if (key == "ic.amp") {
            config.ic.amplitude = to_double(key, value);
        } else if (key == "ic.kmag") {
            config.ic.kmag = static_cast<int>(to_int(key, value));
        } else if (key == "forcing.name") {
            config.forcing.name = value;
        } else if (key == "forcing.amp") {
            config.forcing.amplitude = to_double(key, value);
        } else if (key == "forcing.seed") {
            config.forcing.seed = static_cast<std::uint64_t>(to_int(key, value));
        } else if (key == "cfl_safety") {
            config.cfl_safety = to_double(key, value);
        } else {
            throw UsageError("config: unknown key " + key);
        }
    }
    if (n == 0) throw UsageError("config: n is required");
    try {
        config.grid = Grid(n, nu);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return config;
}

SolverConfig load_config(const std::filesystem::path& path) { return config_from_map(parse_kv_file(path)); }

const ShellNormSeries& Trajectory::series_for(double s) const {
    for (const auto& ser : series) {
        if (std::abs(ser.s - s) <= 1e-12 * std::max(1.0, std::abs(s))) return ser;
    }
    throw DataFormatError(dir.string() + ": no stored series with s=" + format_exponent(s));
}

Trajectory load_trajectory(const std::filesystem::path& dir, bool verify_hashes) {
    Trajectory traj;
    traj.dir = dir;
    traj.manifest = load_manifest(dir, verify_hashes);
    std::vector<std::filesystem::path> snap_paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".nslp1") snap_paths.push_back(entry.path());
    }
    std::sort(snap_paths.begin(), snap_paths.end());
    for (const auto& p : snap_paths) traj.snapshots.push_back(read_snapshot(p));
    std::sort(traj.snapshots.begin(), traj.snapshots.end(),
              [](const Snapshot& a, const Snapshot& b) { return a.time < b.time; });
    if (std::filesystem::exists(dir / "series.csv")) traj.series = load_all_series(dir / "series.csv");
    if (std::filesystem::exists(dir / "energy.csv")) traj.energy = load_energy_csv(dir / "energy.csv");
    return traj;
}

std::vector<ShellNormSeries> shells_from_snapshots(const std::vector<Snapshot>& snapshots,
                                                   const std::vector<double>& exponents) {
    if (snapshots.empty()) throw DataFormatError("shells_from_snapshots: no snapshots");
    const ShellCutoffFamily cutoffs = build_cutoffs(snapshots.front().field.grid);
    std::vector<ShellNormSeries> out;
    for (double s : exponents) {
        ShellNormSeries series;
        series.s = s;
        series.q_min = -1;
        series.q_max = cutoffs.q_max;
        out.push_back(std::move(series));
    }
    for (const auto& snap : snapshots) {
        if (!(snap.field.grid == snapshots.front().field.grid))
            throw DataFormatError("shells_from_snapshots: mixed grids in trajectory");
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            const auto norms = shell_norms(snap.field, exponents[i], cutoffs);
            std::vector<double> row;
            row.reserve(norms.size());
            for (const auto& [q, v] : norms) row.push_back(v);
            out[i].times.push_back(snap.time);
            out[i].norms.push_back(std::move(row));
        }
    }
    for (auto& series : out) series.validate();
    return out;
}

CheckResult check_partition_of_unity(int n, int trials) {
    const Grid grid(n);
    const ShellCutoffFamily cutoffs = build_cutoffs(grid);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const SpectralField f = random_field(grid, 1000 + static_cast<std::uint64_t>(trial));
        SpectralField sum(grid);
        for (int q = cutoffs.q_min; q <= cutoffs.q_max; ++q) {
            const ShellField shell = shell_project(f, q, cutoffs);
            for (int c = 0; c < 3; ++c) {
                const std::size_t size = sum.comp[c].size();
                for (std::size_t i = 0; i < size; ++i) sum.comp[c][i] += shell.field.comp[c][i];
            }
        }
        for (int c = 0; c < 3; ++c) {
            const std::size_t size = sum.comp[c].size();
            for (std::size_t i = 0; i < size; ++i) sum.comp[c][i] -= f.comp[c][i];
        }
        const double f_norm = l2_norm(f);
        if (f_norm == 0.0) continue;
        worst = std::max(worst, l2_norm(sum) / f_norm);
    }
    CheckResult result;
    result.name = "partition-of-unity";
    result.metric = worst;
    result.threshold = 1e-12;
    result.pass = worst < result.threshold;
    result.detail = "max relative reconstruction error over " + std::to_string(trials) + " fields";
    return result;
}

CheckResult check_bernstein(int n, int trials) {
    const Grid grid(n);
    const ShellCutoffFamily cutoffs = build_cutoffs(grid);
    const std::vector<std::pair<double, double>> pairs = {
        {2.0, 10.0 / 3.0}, {2.0, kInfExponent}, {10.0 / 3.0, 6.0}};
    double worst_spread = 0.0;
    std::string detail;
    for (const auto& [a, b] : pairs) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int q = 0; q <= cutoffs.q_max; ++q) {
            for (int trial = 0; trial < trials; ++trial) {
                const SpectralField noise =
                    random_field(grid, 7000 + static_cast<std::uint64_t>(trial) * 37 + q);
                const ShellField shell = shell_project(noise, q, cutoffs);
                const double ratio = bernstein_ratio(shell, a, b);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        const double spread = hi / lo;
        worst_spread = std::max(worst_spread, spread);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "(a=%s,b=%s): ratio in [%.4g, %.4g]; ", format_exponent(a).c_str(),
                      format_exponent(b).c_str(), lo, hi);
        detail += buf;
    }
    CheckResult result;
    result.name = "bernstein";
    result.metric = worst_spread;
    result.threshold = 5.0;
    result.pass = worst_spread <= result.threshold;
    result.detail = detail;
    return result;
}

CheckResult check_energy(const Trajectory& trajectory) {
    CheckResult result;
    result.name = "energy";
    if (trajectory.energy.empty()) throw DataFormatError("check_energy: trajectory has no energy ledger");
    EnergyLedger ledger;
    for (const auto& row : trajectory.energy) ledger.samples.push_back({row.t, row.energy, row.dissipation});
    const double e0 = ledger.samples.front().energy;
    result.metric = ledger.max_pair_violation();
    result.threshold = 1e-4 * e0;
    result.pass = result.metric <= result.threshold;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max pairwise violation %.3g against tol %.3g (E0=%.6g)", result.metric,
                  result.threshold, e0);
    result.detail = buf;
    return result;
}

CheckResult check_decomposition_exactness(int n, int trials, const std::vector<double>& s_list) {
    const Grid grid(n);
    const ShellCutoffFamily cutoffs = build_cutoffs(grid);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const SpectralField u = random_divfree_field(grid, 40 + static_cast<std::uint64_t>(trial), -2.0,
                                                     grid.n / 6.0, std::pow(kTwoPi, 1.5));
        for (int q = 0; q <= cutoffs.q_max; ++q) {
            const auto terms = nonlinear_flux_terms_multi(u, q, s_list, cutoffs);
            for (const auto& ft : terms) {
                const double split = ft.signed1 + ft.signed2 + ft.signed3;
                const double scale = std::max({ft.unsplit_abs, ft.i1 + ft.i2 + ft.i3, 1e-300});
                worst = std::max(worst, std::abs(split - ft.unsplit_signed) / scale);
            }
        }
    }
    CheckResult result;
    result.name = "decomposition-exactness";
    result.metric = worst;
    result.threshold = 1e-8;
    result.pass = worst < result.threshold;
    result.detail = "max relative mismatch between signed paraproduct sum and unsplit flux";
    return result;
}

CheckResult check_shell_inequality(const Trajectory& trajectory, double s, int q_lo, int q_hi,
                                   std::size_t flux_snapshots, ShellInequalityReport* out_report) {
    if (trajectory.snapshots.empty())
        throw DataFormatError("check_shell_inequality: trajectory has no snapshots");
    const ShellCutoffFamily cutoffs = build_cutoffs(trajectory.snapshots.front().field.grid);
    const ShellNormSeries& series = trajectory.series_for(s);
    ShellInequalityReport report =
        verify_shell_inequality(series, trajectory.snapshots, q_lo, q_hi, cutoffs, flux_snapshots);
    CheckResult result;
    result.name = "shell-inequality";
    result.metric = static_cast<double>(report.violations.size());
    result.threshold = 0.0;
    result.pass = report.violations.empty();
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "%zu records (%zu vacuous), c_visc=%.4g c_rhs=%.4g c_i=(%.3g,%.3g,%.3g)",
                  report.records.size(), report.vacuous_records, report.constants.c_visc,
                  report.constants.c_rhs, report.constants.c_i1, report.constants.c_i2,
                  report.constants.c_i3);
    result.detail = buf;
    if (out_report) *out_report = std::move(report);
    return result;
}

ReportSummary make_report(const Trajectory& trajectory, double r, double s, int q_lo, int q_hi,
                          const std::optional<std::filesystem::path>& criterion_csv,
                          const std::optional<std::filesystem::path>& premeasure_csv) {
    ReportSummary summary;
    summary.r = r;
    summary.s = s;
    ShellInequalityReport report;
    check_shell_inequality(trajectory, s, q_lo, q_hi, 0, &report);
    summary.constants = report.constants;
    summary.record_count = report.records.size();
    summary.violation_count = report.violations.size();
    summary.M = criterion_M(r, s);
    summary.delta_admissible =
        report.constants.c_rhs > 0.0 ? admissible_delta(summary.M, report.constants.c_rhs) : 0.0;
    if (criterion_csv) {
        const auto rows = load_criterion_rows(*criterion_csv);
        std::set<double> bad_times;
        for (const auto& row : rows)
            if (row.fired) bad_times.insert(row.t0);
        summary.bad_time_count = bad_times.size();
    }
    if (premeasure_csv) {
        const auto rows = load_premeasure_csv(*premeasure_csv);
        summary.premeasure_dimension = premeasure_dimension_estimate(rows);
        summary.has_premeasure = true;
    }
    return summary;
}

void write_report_json(const ReportSummary& summary, const std::filesystem::path& path) {
    nlohmann::json j;
    j["r"] = format_exponent(summary.r);
    j["s"] = format_exponent(summary.s);
    j["records"] = summary.record_count;
    j["violations"] = summary.violation_count;
    j["constants"] = {{"defined", summary.constants.defined}, {"c_visc", summary.constants.c_visc},
                      {"c_rhs", summary.constants.c_rhs},     {"c_i1", summary.constants.c_i1},
                      {"c_i2", summary.constants.c_i2},       {"c_i3", summary.constants.c_i3}};
    j["M"] = summary.M;
    j["delta_admissible"] = summary.delta_admissible;
    j["bad_times"] = summary.bad_time_count;
    if (summary.has_premeasure) {
        if (std::isnan(summary.premeasure_dimension)) {
            j["premeasure_dimension"] = nullptr;
        } else {
            j["premeasure_dimension"] = summary.premeasure_dimension;
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot write report: " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace nslab
