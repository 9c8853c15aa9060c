#include "nslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nslab {

namespace {

// Plan cache keyed by grid size. FFTW planning is not thread-safe, so plan
// creation is serialized; fftw_execute_dft on caller buffers is safe.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> scratch(static_cast<std::size_t>(n) * n * n);
        fftw_plan p = fftw_plan_dft_3d(n, n, n,
                                       reinterpret_cast<fftw_complex*>(scratch.data()),
                                       reinterpret_cast<fftw_complex*>(scratch.data()),
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw_plan_dft_3d failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

void fft_backward_inplace(int m, std::vector<Complex>& data) {
    if (data.size() != static_cast<std::size_t>(m) * m * m)
        throw std::invalid_argument("fft_backward_inplace: size mismatch");
    fftw_plan p = PlanCache::instance().get(m, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

void fft_forward_inplace(int m, std::vector<Complex>& data) {
    if (data.size() != static_cast<std::size_t>(m) * m * m)
        throw std::invalid_argument("fft_forward_inplace: size mismatch");
    fftw_plan p = PlanCache::instance().get(m, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    const double scale = 1.0 / (static_cast<double>(m) * m * m);
    for (Complex& z : data) z *= scale;
}

void component_to_physical(const Grid& g, const std::vector<Complex>& coeffs, std::vector<double>& values) {
    const std::size_t size = g.size();
    if (coeffs.size() != size) throw std::invalid_argument("component_to_physical: size mismatch");
    std::vector<Complex> work(coeffs);
    fftw_plan p = PlanCache::instance().get(g.n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                     reinterpret_cast<fftw_complex*>(work.data()));
    values.resize(size);
    for (std::size_t i = 0; i < size; ++i) values[i] = work[i].real();
}

void component_to_spectral(const Grid& g, const std::vector<double>& values, std::vector<Complex>& coeffs) {
    const std::size_t size = g.size();
    if (values.size() != size) throw std::invalid_argument("component_to_spectral: size mismatch");
    std::vector<Complex> work(size);
    for (std::size_t i = 0; i < size; ++i) work[i] = Complex{values[i], 0.0};
    fftw_plan p = PlanCache::instance().get(g.n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                     reinterpret_cast<fftw_complex*>(work.data()));
    coeffs.resize(size);
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) coeffs[i] = work[i] * scale;
}

PhysicalField to_physical(const SpectralField& f) {
    PhysicalField out(f.grid);
    for (int c = 0; c < 3; ++c) component_to_physical(f.grid, f.comp[c], out.comp[c]);
    return out;
}

SpectralField to_spectral(const PhysicalField& f) {
    SpectralField out(f.grid);
    for (int c = 0; c < 3; ++c) component_to_spectral(f.grid, f.comp[c], out.comp[c]);
    return out;
}

}  // namespace nslab
