#include "nslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nslab/errors.hpp"
#include "nslab/manifest.hpp"
#include "nslab/series_io.hpp"
#include "nslab/snapshot_io.hpp"

namespace nslab {

double EnergyLedger::max_pair_violation() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const double lhs = samples[j].energy + (samples[j].dissipation - samples[i].dissipation);
            worst = std::max(worst, lhs - samples[i].energy);
        }
    }
    return samples.size() < 2 ? 0.0 : worst;
}

SpectralField make_initial_condition(const Grid& grid, const InitialCondition& ic) {
    if (ic.name == "taylor_green") return taylor_green_field(grid);
    if (ic.name == "single_mode") return single_mode_field(grid, ic.kmag);
    if (ic.name == "random_divfree") {
        const double kc = ic.kc > 0.0 ? ic.kc : grid.n / 6.0;
        const double amplitude = ic.amplitude > 0.0 ? ic.amplitude : std::pow(kTwoPi, 1.5);
        return random_divfree_field(grid, ic.seed, ic.slope, kc, amplitude);
    }
    throw UsageError("unknown initial condition: " + ic.name);
}

SpectralField make_forcing_field(const Grid& grid, const ForcingConfig& forcing) {
    if (forcing.name == "none" || forcing.amplitude == 0.0) return SpectralField(grid);
    if (forcing.name == "low_mode") {
        SpectralField f = random_field(grid, forcing.seed);
        truncate_ball(f, 2.5);
        leray_project_in_place(f);
        const double norm = l2_norm(f);
        if (norm == 0.0) throw NumericalError("degenerate forcing draw");
        const double scale = forcing.amplitude / norm;
        for (int c = 0; c < 3; ++c)
            for (Complex& z : f.comp[c]) z *= scale;
        return f;
    }
    throw UsageError("unknown forcing: " + forcing.name);
}

Stepper::Stepper(const SolverConfig& config)
    : grid_(config.grid),
      dt_(config.dt),
      mode_(config.mode),
      dealias_(config.dealias),
      cfl_safety_(config.cfl_safety),
      forcing_(make_forcing_field(config.grid, config.forcing)) {
    if (!(dt_ > 0.0)) throw UsageError("dt must be positive");
    has_forcing_ = coefficient_energy(forcing_) > 0.0;
    const int n = grid_.n;
    exp_full_.resize(grid_.size());
    exp_half_.resize(grid_.size());
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = grid_.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = grid_.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = grid_.wavenumber(j3);
                const std::size_t idx = grid_.index(j1, j2, j3);
                const double k_sq = k1 * k1 + k2 * k2 + k3 * k3;
                exp_full_[idx] = std::exp(-grid_.nu * k_sq * dt_);
                exp_half_[idx] = std::exp(-grid_.nu * k_sq * 0.5 * dt_);
            }
        }
    }
}

void Stepper::apply_viscous_factor(SpectralField& u, const std::vector<double>& factor) const {
    for (int c = 0; c < 3; ++c) {
        const std::size_t size = u.comp[c].size();
        for (std::size_t i = 0; i < size; ++i) u.comp[c][i] *= factor[i];
    }
}

void Stepper::check_cfl(const SpectralField& u) const {
    const double dx = grid_.dx();
    double limit = cfl_safety_ * dx * dx / grid_.nu;
    if (mode_ == SolverMode::full) {
        const double u_max = lebesgue_norm(to_physical(u), kInfExponent);
        if (u_max > 0.0) limit = std::min(limit, cfl_safety_ * dx / u_max);
    }
    if (dt_ > limit) {
        char msg[160];
        std::snprintf(msg, sizeof(msg), "CFL violation: dt=%.6g exceeds limit %.6g", dt_, limit);
        throw NumericalError(msg);
    }
}

SpectralField Stepper::nonlinear_rhs(const SpectralField& u) const {
    if (mode_ == SolverMode::stokes) {
        SpectralField out = has_forcing_ ? forcing_ : SpectralField(grid_);
        return out;
    }
    SpectralField band = u;
    if (dealias_) truncate_modes(band, grid_.dealias_cut());
    const PhysicalField u_phys = to_physical(band);

    PhysicalField advect(grid_);
    for (int axis = 0; axis < 3; ++axis) {
        const PhysicalField grad_axis = to_physical(derivative(band, axis));
        const std::size_t size = grid_.size();
        for (int c = 0; c < 3; ++c) {
            const double* velocity = u_phys.comp[axis].data();
            const double* grad = grad_axis.comp[c].data();
            double* acc = advect.comp[c].data();
            for (std::size_t i = 0; i < size; ++i) acc[i] += velocity[i] * grad[i];
        }
    }

    SpectralField out = to_spectral(advect);
    if (dealias_) truncate_modes(out, grid_.dealias_cut());
    enforce_zero_mean(out);
    leray_project_in_place(out);
    for (int c = 0; c < 3; ++c)
        for (Complex& z : out.comp[c]) z = -z;
    if (has_forcing_) {
        for (int c = 0; c < 3; ++c) {
            const std::size_t size = out.comp[c].size();
            for (std::size_t i = 0; i < size; ++i) out.comp[c][i] += forcing_.comp[c][i];
        }
    }
    return out;
}

namespace {

void axpy(SpectralField& y, double a, const SpectralField& x) {
    for (int c = 0; c < 3; ++c) {
        const std::size_t size = y.comp[c].size();
        for (std::size_t i = 0; i < size; ++i) y.comp[c][i] += a * x.comp[c][i];
    }
}

}  // namespace

void Stepper::step(SpectralField& u) const {
    check_cfl(u);

    // Integrating-factor RK4: exact viscous factor, classical RK4 on the
    // transformed nonlinear term.
    const SpectralField k1 = nonlinear_rhs(u);

    SpectralField stage = u;
    axpy(stage, 0.5 * dt_, k1);
    apply_viscous_factor(stage, exp_half_);
    const SpectralField k2 = nonlinear_rhs(stage);

    stage = u;
    apply_viscous_factor(stage, exp_half_);
    axpy(stage, 0.5 * dt_, k2);
    const SpectralField k3 = nonlinear_rhs(stage);

    stage = u;
    apply_viscous_factor(stage, exp_full_);
    SpectralField k3_half = k3;
    apply_viscous_factor(k3_half, exp_half_);
    axpy(stage, dt_, k3_half);
    const SpectralField k4 = nonlinear_rhs(stage);

    // u <- E u + dt/6 (E k1 + 2 E2 (k2 + k3) + k4)
    apply_viscous_factor(u, exp_full_);
    SpectralField k1_full = k1;
    apply_viscous_factor(k1_full, exp_full_);
    axpy(u, dt_ / 6.0, k1_full);
    SpectralField mid = k2;
    axpy(mid, 1.0, k3);
    apply_viscous_factor(mid, exp_half_);
    axpy(u, dt_ / 3.0, mid);
    axpy(u, dt_ / 6.0, k4);

    enforce_zero_mean(u);
    if (has_non_finite(u)) throw NumericalError("blow-up or instability detected (non-finite coefficients)");
}

namespace {

std::map<std::string, std::string> config_echo(const SolverConfig& c) {
    std::map<std::string, std::string> m;
    m["n"] = std::to_string(c.grid.n);
    m["nu"] = format_double(c.grid.nu);
    m["dt"] = format_double(c.dt);
    m["t_end"] = format_double(c.t_end);
    m["mode"] = c.mode == SolverMode::full ? "full" : "stokes";
    m["dealias"] = c.dealias ? "on" : "off";
    m["snapshot_stride"] = std::to_string(c.snapshot_stride);
    m["series_stride"] = std::to_string(c.series_stride);
    std::string exps;
    for (double s : c.series_exponents) {
        if (!exps.empty()) exps += ",";
        exps += format_exponent(s);
    }
    m["series.s"] = exps;
    m["ic.name"] = c.ic.name;
    m["ic.seed"] = std::to_string(c.ic.seed);
    m["ic.slope"] = format_double(c.ic.slope);
    m["ic.kc"] = format_double(c.ic.kc);
    m["ic.amp"] = format_double(c.ic.amplitude);
    m["ic.kmag"] = std::to_string(c.ic.kmag);
    m["forcing.name"] = c.forcing.name;
    m["forcing.amp"] = format_double(c.forcing.amplitude);
    m["forcing.seed"] = std::to_string(c.forcing.seed);
    m["cfl_safety"] = format_double(c.cfl_safety);
    return m;
}

std::string snapshot_name(long long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%08lld.nslp1", step);
    return buf;
}

}  // namespace

RunResult run(const SolverConfig& config, const std::filesystem::path& out_dir) {
    if (!(config.t_end >= 0.0)) throw UsageError("t_end must be nonnegative");
    if (config.series_stride < 1) throw UsageError("series_stride must be >= 1");
    std::filesystem::create_directories(out_dir);

    SpectralField u = make_initial_condition(config.grid, config.ic);
    leray_project_in_place(u);
    enforce_zero_mean(u);
    if (config.mode == SolverMode::full && config.dealias) truncate_modes(u, config.grid.dealias_cut());

    const ShellCutoffFamily cutoffs = build_cutoffs(config.grid);
    RunResult result;
    result.out_dir = out_dir;
    for (double s : config.series_exponents) {
        ShellNormSeries series;
        series.s = s;
        series.q_min = -1;
        series.q_max = cutoffs.q_max;
        series.source = out_dir.string();
        result.series.push_back(std::move(series));
    }

    const auto record_series = [&](double t) {
        for (auto& series : result.series) {
            const auto norms = shell_norms(u, series.s, cutoffs);
            std::vector<double> row;
            row.reserve(norms.size());
            for (const auto& [q, norm] : norms) row.push_back(norm);
            series.times.push_back(t);
            series.norms.push_back(std::move(row));
        }
    };
    const auto write_snap = [&](long long step, double t) {
        const auto path = out_dir / snapshot_name(step);
        write_snapshot(path, u, t);
        result.snapshot_paths.push_back(path);
        result.snapshot_times.push_back(t);
    };

    EnergyLedger& ledger = result.ledger;
    double grad_sq_prev = 0.0;
    {
        const double g = gradient_norm_l2(u);
        grad_sq_prev = 2.0 * config.grid.nu * g * g;
        const double e = l2_norm(u);
        ledger.samples.push_back({0.0, e * e, 0.0});
    }
    record_series(0.0);
    write_snap(0, 0.0);

    const long long steps = static_cast<long long>(std::llround(config.t_end / config.dt));
    const Stepper stepper(config);

    const auto flush_outputs = [&]() {
        std::vector<EnergyRow> rows;
        rows.reserve(ledger.samples.size());
        for (const auto& s : ledger.samples) rows.push_back({s.t, s.energy, s.dissipation});
        save_energy_csv(rows, out_dir / "energy.csv");
        save_series(result.series, out_dir / "series.csv");
        RunManifest manifest;
        manifest.config_echo = config_echo(config);
        manifest.artifacts["energy.csv"] = fnv1a64_file(out_dir / "energy.csv");
        manifest.artifacts["series.csv"] = fnv1a64_file(out_dir / "series.csv");
        for (const auto& p : result.snapshot_paths)
            manifest.artifacts[p.filename().string()] = fnv1a64_file(p);
        write_manifest(manifest, out_dir);
    };

    try {
        for (long long i = 1; i <= steps; ++i) {
            stepper.step(u);
            const double t = static_cast<double>(i) * config.dt;
            const double g = gradient_norm_l2(u);
            const double grad_sq = 2.0 * config.grid.nu * g * g;
            const double e = l2_norm(u);
            const double diss =
                ledger.samples.back().dissipation + 0.5 * config.dt * (grad_sq_prev + grad_sq);
            ledger.samples.push_back({t, e * e, diss});
            grad_sq_prev = grad_sq;
            if (i % config.series_stride == 0 || i == steps) record_series(t);
            const bool snap_due = config.snapshot_stride > 0 && i % config.snapshot_stride == 0;
            if (snap_due || i == steps) write_snap(i, t);
        }
    } catch (...) {
        flush_outputs();
        throw;
    }

    flush_outputs();
    result.final_state = std::move(u);
    result.final_time = static_cast<double>(steps) * config.dt;
    return result;
}

}  // namespace nslab
