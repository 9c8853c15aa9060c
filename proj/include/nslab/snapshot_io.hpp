#pragma once

#include <filesystem>

#include "nslab/field.hpp"

namespace nslab {

// NSLP1 snapshot: magic "NSLP1", u8 version = 1, u32le n, f64le time,
// f64le nu, then 3 components of n^3 (re, im) f64 pairs in row-major
// k-order (k1 slowest) over the full FFT layout.
struct Snapshot {
    SpectralField field;
    double time = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace nslab
