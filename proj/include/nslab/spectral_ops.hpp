#pragma once

#include <cstdint>
#include <limits>

#include "nslab/fft.hpp"
#include "nslab/field.hpp"

namespace nslab {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Projection onto divergence-free fields: coeff'(k) = (I - k k^T/|k|^2) coeff(k),
// coeff'(0) = 0. Idempotent and L2 self-adjoint.
SpectralField leray_project(const SpectralField& f);
void leray_project_in_place(SpectralField& f);

// ((2pi/n)^3 sum_x |u(x)|^s)^{1/s} with |.| the Euclidean vector norm;
// grid max for s = infinity. Rejects s < 1.
double lebesgue_norm(const PhysicalField& f, double s);

// Parseval-side norms.
double l2_norm(const SpectralField& f);           // ((2pi)^3 sum_k |coeff|^2)^{1/2}
double gradient_norm_l2(const SpectralField& f);  // ((2pi)^3 sum_k |k|^2 |coeff|^2)^{1/2}

// L2 inner product (f, g) = (2pi)^3 sum_k coeff_f(k) . conj(coeff_g(k)).
double inner_product(const SpectralField& f, const SpectralField& g);

// Component-wise spectral derivative d/dx_j (multiplication by i k_j).
SpectralField derivative(const SpectralField& f, int axis);

// --- field generators (all deterministic) ---

// coeff((0,0,+-m)) pair representing u = (sin(m x3), 0, 0).
SpectralField single_mode_field(const Grid& g, int m);

// 2D Taylor-Green vortex embedded in 3D:
// u = (sin x1 cos x2, -cos x1 sin x2, 0). Exact Navier-Stokes solution with
// amplitude decay e^{-2 nu t}.
SpectralField taylor_green_field(const Grid& g);

// Random Hermitian-symmetric field with coefficient amplitude
// |k|^slope * exp(-|k|^2/kc^2), band-limited to |k| <= n/2 (Nyquist planes
// cleared), zero mean. Not divergence-free.
SpectralField random_field(const Grid& g, std::uint64_t seed, double slope = 0.0, double kc = 0.0);

// Leray-projected random field normalized to l2_norm = amplitude.
SpectralField random_divfree_field(const Grid& g, std::uint64_t seed, double slope, double kc, double amplitude);

}  // namespace nslab
