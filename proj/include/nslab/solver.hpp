#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nslab/littlewood_paley.hpp"
#include "nslab/series.hpp"
#include "nslab/spectral_ops.hpp"

namespace nslab {

enum class SolverMode { full, stokes };

struct InitialCondition {
    std::string name = "taylor_green";  // taylor_green | single_mode | random_divfree
    std::uint64_t seed = 1;
    double slope = -2.0;
    double kc = 0.0;        // 0 -> n/6
    double amplitude = 0.0; // 0 -> (2pi)^{3/2} (unit rms)
    int kmag = 4;           // |k| of single_mode
};

struct ForcingConfig {
    std::string name = "none";  // none | low_mode
    double amplitude = 0.0;
    std::uint64_t seed = 7;
};

struct SolverConfig {
    Grid grid;
    double dt = 1e-3;
    double t_end = 0.1;
    bool dealias = true;
    SolverMode mode = SolverMode::full;
    int snapshot_stride = 0;  // 0 -> only first and last state
    int series_stride = 1;
    std::vector<double> series_exponents = {2.0, 10.0 / 3.0};
    InitialCondition ic;
    ForcingConfig forcing;
    double cfl_safety = 0.5;
};

struct EnergySample {
    double t;
    double energy;       // ||u(t)||_2^2
    double dissipation;  // 2 nu int_0^t ||grad u||_2^2 (running trapezoid)
};

struct EnergyLedger {
    std::vector<EnergySample> samples;

    // Largest violation of E(t) + D(t) - D(t0) <= E(t0) over all stored
    // pairs t0 < t; <= 0 means the energy inequality holds exactly.
    double max_pair_violation() const;
};

SpectralField make_initial_condition(const Grid& grid, const InitialCondition& ic);
SpectralField make_forcing_field(const Grid& grid, const ForcingConfig& forcing);

// Integrating-factor RK4 stepper for
//   du/dt = -P(u . grad u) - nu |k|^2 u + f
// with the viscous factor treated exactly and the nonlinear term formed in
// physical space under the 2/3 rule.
class Stepper {
  public:
    Stepper(const SolverConfig& config);

    // One step of size dt; wall-clock time is tracked by the caller.
    void step(SpectralField& u) const;

    // -P(dealias(u . grad u)); zero field in stokes mode.
    SpectralField nonlinear_rhs(const SpectralField& u) const;

    double dt() const { return dt_; }

  private:
    void check_cfl(const SpectralField& u) const;
    void apply_viscous_factor(SpectralField& u, const std::vector<double>& factor) const;

    Grid grid_;
    double dt_;
    SolverMode mode_;
    bool dealias_;
    double cfl_safety_;
    SpectralField forcing_;
    bool has_forcing_ = false;
    std::vector<double> exp_full_;  // e^{-nu |k|^2 dt}
    std::vector<double> exp_half_;  // e^{-nu |k|^2 dt/2}
};

struct RunResult {
    std::filesystem::path out_dir;
    EnergyLedger ledger;
    std::vector<std::filesystem::path> snapshot_paths;
    std::vector<double> snapshot_times;
    // One series per requested exponent, finest stored sampling.
    std::vector<ShellNormSeries> series;
    SpectralField final_state;
    double final_time = 0.0;
};

// Integrate to t_end, writing snapshots (NSLP1), energy.csv, series.csv and
// manifest.json into out_dir. Partial outputs are flushed before an abort.
RunResult run(const SolverConfig& config, const std::filesystem::path& out_dir);

}  // namespace nslab
