#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace nslab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic cube [0,2pi)^3 sampled on n points per axis. n must be a power of
// two so that the dyadic shells line up with the resolvable band.
struct Grid {
    int n = 0;
    double nu = 1.0;

    Grid() = default;
    Grid(int n_, double nu_ = 1.0) : n(n_), nu(nu_) {
        if (n < 16 || (n & (n - 1)) != 0) throw std::invalid_argument("Grid: n must be a power of two >= 16");
        if (!(nu > 0.0)) throw std::invalid_argument("Grid: nu must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double dx() const { return kTwoPi / n; }
    double cell_volume() const { return dx() * dx() * dx(); }

    // Signed wavenumber for FFT slot j in [0,n). Slot n/2 carries +n/2.
    int wavenumber(int j) const { return j <= n / 2 ? j : j - n; }

    std::size_t index(int j1, int j2, int j3) const {
        return (static_cast<std::size_t>(j1) * n + j2) * n + j3;
    }

    // Largest dyadic shell with content inside the resolved ball |k| <= n/2.
    int max_shell() const {
        int q = 0;
        while ((2 << q) <= n / 2) ++q;
        return q;  // lambda_q = 2^q <= n/2 < 2^{q+1}
    }

    // 2/3-rule band: modes with any |k_i| > dealias_cut() are dropped around
    // physical-space products.
    int dealias_cut() const { return n / 3; }

    bool operator==(const Grid& o) const { return n == o.n && nu == o.nu; }
};

}  // namespace nslab
