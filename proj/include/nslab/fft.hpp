#pragma once

#include "nslab/field.hpp"

namespace nslab {

// Transforms use a process-wide FFTW plan cache keyed by size. Plans are
// created with FFTW_ESTIMATE so planning is deterministic; execution on
// distinct buffers is thread-safe.

// u(x) = sum_k coeff(k) e^{i k.x} evaluated on the grid.
PhysicalField to_physical(const SpectralField& f);

// Inverse: coeff(k) = n^{-3} sum_x u(x) e^{-i k.x}.
SpectralField to_spectral(const PhysicalField& f);

// Single-component transforms on raw buffers (size n^3, row-major).
void component_to_physical(const Grid& g, const std::vector<Complex>& coeffs, std::vector<double>& values);
void component_to_spectral(const Grid& g, const std::vector<double>& values, std::vector<Complex>& coeffs);

// Raw in-place transforms for an arbitrary cube edge m (the padded-product
// workspace uses m = 3n/2, which is not a power of two).
void fft_backward_inplace(int m, std::vector<Complex>& data);  // unnormalized sum with e^{+ik.x}
void fft_forward_inplace(int m, std::vector<Complex>& data);   // scaled by m^{-3}

}  // namespace nslab
