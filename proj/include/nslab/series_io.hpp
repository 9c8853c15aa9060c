#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nslab/series.hpp"

namespace nslab {

// Exponent formatting for CSV: exact small rationals print as "a/b"
// ("10/3", integers without the slash), everything else as shortest
// round-trip decimal.
std::string format_exponent(double s);
double parse_exponent(const std::string& text);  // accepts "a/b", "inf", decimals

std::string format_double(double v);  // 17 significant digits, lossless

// CSV schema: header "time,q,s,norm", one row per (t, q, s). A file may
// carry several exponents; each loads into its own series.
void save_series(const std::vector<ShellNormSeries>& series, const std::filesystem::path& path);
void save_series(const ShellNormSeries& series, const std::filesystem::path& path);

std::vector<ShellNormSeries> load_all_series(const std::filesystem::path& path);
// Selects the series with the given exponent (throws DataFormatError if absent).
ShellNormSeries load_series(const std::filesystem::path& path, double s);

// Energy ledger CSV: header "t,energy,dissipation".
struct EnergyRow {
    double t, energy, dissipation;
};
void save_energy_csv(const std::vector<EnergyRow>& rows, const std::filesystem::path& path);
std::vector<EnergyRow> load_energy_csv(const std::filesystem::path& path);

}  // namespace nslab
