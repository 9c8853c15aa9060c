#include "nslab/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "nslab/errors.hpp"

namespace nslab {

namespace {

double lambda(int q) { return ShellCutoffFamily::lambda(q); }

void check_contiguous(const std::map<int, double>& norms, int q) {
    if (norms.empty()) throw std::invalid_argument("rhs_bound: empty shell-norm map");
    int expect = norms.begin()->first;
    for (const auto& [p, v] : norms) {
        if (p != expect) throw std::invalid_argument("rhs_bound: missing shell data at q=" + std::to_string(expect));
        (void)v;
        ++expect;
    }
    if (norms.find(q) == norms.end())
        throw std::invalid_argument("rhs_bound: no data for shell q=" + std::to_string(q));
}

using RadialMult = std::function<double(double)>;

// Scatter multiplier(|k|) * coeffs (optionally d/dx_axis) onto the padded
// m-grid and return the physical values. One backward FFT per call.
std::vector<double> padded_physical(const Grid& g, int m, const std::vector<Complex>& coeffs,
                                    const RadialMult& mult, int deriv_axis) {
    const int n = g.n;
    std::vector<Complex> buf(static_cast<std::size_t>(m) * m * m, Complex{0.0, 0.0});
    for (int j1 = 0; j1 < n; ++j1) {
        const int k1 = g.wavenumber(j1);
        const int pj1 = k1 >= 0 ? k1 : k1 + m;
        for (int j2 = 0; j2 < n; ++j2) {
            const int k2 = g.wavenumber(j2);
            const int pj2 = k2 >= 0 ? k2 : k2 + m;
            for (int j3 = 0; j3 < n; ++j3) {
                const int k3 = g.wavenumber(j3);
                const Complex c = coeffs[g.index(j1, j2, j3)];
                if (c == Complex{0.0, 0.0}) continue;
                const double k_abs = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3));
                const double mv = mult ? mult(k_abs) : 1.0;
                if (mv == 0.0) continue;
                Complex value = mv * c;
                if (deriv_axis >= 0) {
                    const int k_axis = deriv_axis == 0 ? k1 : deriv_axis == 1 ? k2 : k3;
                    value *= Complex{0.0, static_cast<double>(k_axis)};
                }
                const int pj3 = k3 >= 0 ? k3 : k3 + m;
                buf[(static_cast<std::size_t>(pj1) * m + pj2) * m + pj3] = value;
            }
        }
    }
    fft_backward_inplace(m, buf);
    std::vector<double> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

// Accumulates (A . grad) B products on the padded grid; harvest() transforms
// back and gathers the resolved band onto the n-grid.
class AdvectionAccumulator {
  public:
    explicit AdvectionAccumulator(const Grid& g) : g_(g), m_(3 * g.n / 2) {
        const std::size_t size = static_cast<std::size_t>(m_) * m_ * m_;
        for (auto& a : acc_) a.assign(size, 0.0);
    }

    void add(const SpectralField& u, const RadialMult& mult_a, const RadialMult& mult_b) {
        for (int axis = 0; axis < 3; ++axis) {
            const std::vector<double> a_axis = padded_physical(g_, m_, u.comp[axis], mult_a, -1);
            for (int c = 0; c < 3; ++c) {
                const std::vector<double> db = padded_physical(g_, m_, u.comp[c], mult_b, axis);
                double* acc = acc_[c].data();
                const double* av = a_axis.data();
                const double* dv = db.data();
                const std::size_t size = acc_[c].size();
                for (std::size_t i = 0; i < size; ++i) acc[i] += av[i] * dv[i];
            }
        }
    }

    SpectralField harvest() const {
        SpectralField out(g_);
        const int n = g_.n;
        for (int c = 0; c < 3; ++c) {
            std::vector<Complex> buf(acc_[c].size());
            for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex{acc_[c][i], 0.0};
            fft_forward_inplace(m_, buf);
            for (int j1 = 0; j1 < n; ++j1) {
                const int k1 = g_.wavenumber(j1);
                const int pj1 = k1 >= 0 ? k1 : k1 + m_;
                for (int j2 = 0; j2 < n; ++j2) {
                    const int k2 = g_.wavenumber(j2);
                    const int pj2 = k2 >= 0 ? k2 : k2 + m_;
                    for (int j3 = 0; j3 < n; ++j3) {
                        const int k3 = g_.wavenumber(j3);
                        const int pj3 = k3 >= 0 ? k3 : k3 + m_;
                        out.comp[c][g_.index(j1, j2, j3)] =
                            buf[(static_cast<std::size_t>(pj1) * m_ + pj2) * m_ + pj3];
                    }
                }
            }
        }
        return out;
    }

  private:
    Grid g_;
    int m_;
    std::array<std::vector<double>, 3> acc_;
};

void apply_shell_multiplier(SpectralField& f, int q, const ShellCutoffFamily& cutoffs) {
    const Grid& g = f.grid;
    const int n = g.n;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const double k_abs = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
                const double mv = cutoffs.multiplier(q, k_abs);
                const std::size_t idx = g.index(j1, j2, j3);
                for (int c = 0; c < 3; ++c) f.comp[c][idx] *= mv;
            }
        }
    }
}

// Pointwise weight u_q |u_q|^{s-2} on the n-grid.
PhysicalField shell_weight(const PhysicalField& uq_phys, double s) {
    PhysicalField w = uq_phys;
    if (s == 2.0) return w;
    const double expo = 0.5 * (s - 2.0);
    const std::size_t size = w.grid.size();
    for (std::size_t i = 0; i < size; ++i) {
        const double mag_sq = uq_phys.comp[0][i] * uq_phys.comp[0][i] +
                              uq_phys.comp[1][i] * uq_phys.comp[1][i] +
                              uq_phys.comp[2][i] * uq_phys.comp[2][i];
        const double scale = mag_sq > 0.0 ? std::pow(mag_sq, expo) : 0.0;
        for (int c = 0; c < 3; ++c) w.comp[c][i] *= scale;
    }
    return w;
}

double pair_fields(const PhysicalField& f, const PhysicalField& w) {
    double sum = 0.0;
    const std::size_t size = f.grid.size();
    for (int c = 0; c < 3; ++c) {
        const double* a = f.comp[c].data();
        const double* b = w.comp[c].data();
        for (std::size_t i = 0; i < size; ++i) sum += a[i] * b[i];
    }
    return f.grid.cell_volume() * sum;
}

}  // namespace

RhsBound rhs_bound(const std::map<int, double>& shell_norms_at_t, int q, double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("rhs_bound: exponent must satisfy s >= 1");
    check_contiguous(shell_norms_at_t, q);
    const double three_over_s = s == kInfExponent ? 0.0 : 3.0 / s;

    double low_sum = 0.0;   // sum_{p<=q} lambda_p^{3/s} ||u_p||
    double band_sum = 0.0;  // sum_{|p-q|<=2} lambda_p ||u_p||
    double high_sum = 0.0;  // sum_{p>=q-2} ||u_p||^2
    for (const auto& [p, norm] : shell_norms_at_t) {
        if (p <= q) low_sum += std::pow(lambda(p), three_over_s) * norm;
        if (std::abs(p - q) <= 2) band_sum += lambda(p) * norm;
        if (p >= q - 2) high_sum += norm * norm;
    }
    RhsBound out;
    out.low = low_sum * band_sum;
    out.high = std::pow(lambda(q), three_over_s + 1.0) * high_sum;
    return out;
}

std::vector<FluxTerms> nonlinear_flux_terms_multi(const SpectralField& u, int q,
                                                  const std::vector<double>& s_list,
                                                  const ShellCutoffFamily& cutoffs) {
    for (double s : s_list)
        if (!(s >= 2.0)) throw std::invalid_argument("nonlinear_flux_terms: weight needs s >= 2");
    if (q < -1 || q > cutoffs.q_max)
        throw std::invalid_argument("nonlinear_flux_terms: shell index outside [-1, q_max]");

    const Grid& g = u.grid;
    const auto shell_mult = [&cutoffs](int p) {
        return RadialMult([&cutoffs, p](double k_abs) { return cutoffs.multiplier(p, k_abs); });
    };
    const auto lowpass_mult = [&cutoffs](int m) {
        return RadialMult([&cutoffs, m](double k_abs) { return cutoffs.lowpass_multiplier(m, k_abs); });
    };
    const auto tilde_mult = [&cutoffs](int p) {
        return RadialMult([&cutoffs, p](double k_abs) {
            double sum = 0.0;
            for (int j = p - 1; j <= p + 1; ++j)
                if (j >= -1) sum += cutoffs.multiplier(j, k_abs);
            return sum;
        });
    };

    // T1 = sum_{|p-q|<=2} (u_{<=p-2} . grad) u_p, T2 with the roles swapped,
    // T3 = sum_{p>=q-2} (utilde_p . grad) u_p. Shells above q_max carry no
    // content on this grid and are skipped.
    AdvectionAccumulator t1(g), t2(g), t3(g);
    for (int p = q - 2; p <= q + 2; ++p) {
        if (p < -1 || p > cutoffs.q_max) continue;
        if (p - 2 < -1) continue;  // empty low-frequency block
        t1.add(u, lowpass_mult(p - 2), shell_mult(p));
        t2.add(u, shell_mult(p), lowpass_mult(p - 2));
    }
    for (int p = std::max(q - 2, -1); p <= cutoffs.q_max; ++p) t3.add(u, tilde_mult(p), shell_mult(p));

    AdvectionAccumulator unsplit(g);
    unsplit.add(u, RadialMult{}, RadialMult{});

    const auto project = [&](const AdvectionAccumulator& acc) {
        SpectralField f = acc.harvest();
        apply_shell_multiplier(f, q, cutoffs);
        leray_project_in_place(f);
        return to_physical(f);
    };
    const PhysicalField f1 = project(t1);
    const PhysicalField f2 = project(t2);
    const PhysicalField f3 = project(t3);
    const PhysicalField f0 = project(unsplit);

    const PhysicalField uq_phys = to_physical(shell_project(u, q, cutoffs).field);

    std::vector<FluxTerms> out;
    out.reserve(s_list.size());
    for (double s : s_list) {
        const PhysicalField w = shell_weight(uq_phys, s);
        FluxTerms ft;
        ft.signed1 = pair_fields(f1, w);
        ft.signed2 = pair_fields(f2, w);
        ft.signed3 = pair_fields(f3, w);
        ft.unsplit_signed = pair_fields(f0, w);
        ft.i1 = std::abs(ft.signed1);
        ft.i2 = std::abs(ft.signed2);
        ft.i3 = std::abs(ft.signed3);
        ft.unsplit_abs = std::abs(ft.unsplit_signed);
        out.push_back(ft);
    }
    return out;
}

FluxTerms nonlinear_flux_terms(const SpectralField& u, int q, double s, const ShellCutoffFamily& cutoffs) {
    return nonlinear_flux_terms_multi(u, q, {s}, cutoffs).front();
}

double shell_dissipation_ratio(const SpectralField& u, int q, double s, const ShellCutoffFamily& cutoffs) {
    if (!(s >= 2.0)) throw std::invalid_argument("shell_dissipation_ratio: needs s >= 2");
    const SpectralField uq = shell_project(u, q, cutoffs).field;
    const PhysicalField uq_phys = to_physical(uq);
    const double norm_s = lebesgue_norm(uq_phys, s);
    if (norm_s == 0.0) throw std::invalid_argument("shell_dissipation_ratio: empty shell");

    SpectralField lap = uq;
    const Grid& g = u.grid;
    const int n = g.n;
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.wavenumber(j2);
            for (int j3 = 0; j3 < n; ++j3) {
                const double k3 = g.wavenumber(j3);
                const double k_sq = k1 * k1 + k2 * k2 + k3 * k3;
                const std::size_t idx = g.index(j1, j2, j3);
                for (int c = 0; c < 3; ++c) lap.comp[c][idx] *= k_sq;  // -Laplace
            }
        }
    }
    const PhysicalField w = shell_weight(uq_phys, s);
    const double pairing = pair_fields(to_physical(lap), w);
    const double lam = lambda(q);
    return pairing / (lam * lam * std::pow(norm_s, s));
}

ShellInequalityReport verify_shell_inequality(const ShellNormSeries& series,
                                              const std::vector<Snapshot>& snapshots, int q_lo, int q_hi,
                                              const ShellCutoffFamily& cutoffs,
                                              std::size_t max_flux_snapshots) {
    series.validate();
    if (series.times.size() < 2) throw std::invalid_argument("verify_shell_inequality: need >= 2 samples");
    if (q_lo < series.q_min || q_hi > series.q_max || q_lo > q_hi)
        throw std::invalid_argument("verify_shell_inequality: shell range outside series");

    double max_spacing = 0.0;
    for (std::size_t i = 0; i + 1 < series.times.size(); ++i)
        max_spacing = std::max(max_spacing, series.times[i + 1] - series.times[i]);
    const double lam_hi = lambda(q_hi);
    const double required = 0.1 / (lam_hi * lam_hi);
    if (max_spacing > required * (1.0 + 1e-9)) {
        char msg[192];
        std::snprintf(msg, sizeof(msg),
                      "verify_shell_inequality: series spacing %.3g too coarse for q=%d "
                      "(need <= %.3g)",
                      max_spacing, q_hi, required);
        throw std::invalid_argument(msg);
    }

    ShellInequalityReport report;
    double global_max = 0.0;
    for (const auto& row : series.norms)
        for (double v : row) global_max = std::max(global_max, v);
    report.noise_floor = 1e-10 * global_max;

    // Dissipation constant from the snapshot fields.
    double c_visc = std::numeric_limits<double>::infinity();
    bool have_cvisc = false;
    for (const auto& snap : snapshots) {
        for (int q = q_lo; q <= q_hi; ++q) {
            const SpectralField uq = shell_project(snap.field, q, cutoffs).field;
            const double norm_s = lebesgue_norm(to_physical(uq), series.s);
            if (norm_s <= report.noise_floor) continue;
            c_visc = std::min(c_visc, shell_dissipation_ratio(snap.field, q, series.s, cutoffs));
            have_cvisc = true;
        }
    }

    // Midpoint records from the fine series.
    const std::size_t nt = series.times.size();
    for (std::size_t i = 0; i + 1 < nt; ++i) {
        const double dt = series.times[i + 1] - series.times[i];
        const double t_mid = 0.5 * (series.times[i] + series.times[i + 1]);
        std::map<int, double> mid;
        for (int q = series.q_min; q <= series.q_max; ++q)
            mid[q] = 0.5 * (series.norm_at(i, q) + series.norm_at(i + 1, q));
        for (int q = q_lo; q <= q_hi; ++q) {
            ShellInequalityRecord rec;
            rec.t = t_mid;
            rec.q = q;
            rec.s = series.s;
            rec.lhs_diff = (series.norm_at(i + 1, q) - series.norm_at(i, q)) / dt;
            rec.lhs_visc = lambda(q) * lambda(q) * mid[q];
            const RhsBound rhs = rhs_bound(mid, q, series.s);
            rec.rhs_low = rhs.low;
            rec.rhs_high = rhs.high;
            report.records.push_back(rec);
        }
    }

    // Fit c_rhs as the smallest constant making every non-vacuous record pass.
    double c_rhs = 0.0;
    const double cv = have_cvisc ? c_visc : 0.0;
    for (const auto& rec : report.records) {
        const double lhs = rec.lhs_diff + cv * rec.lhs_visc;
        const double rhs = rec.rhs_low + rec.rhs_high;
        // Scale-aware floor: rhs is quadratic in the norms.
        const double rhs_floor = report.noise_floor * report.noise_floor;
        if (rhs <= rhs_floor) {
            ++report.vacuous_records;
            if (lhs > 1e-8 * std::max(1.0, global_max) * lambda(rec.q) * lambda(rec.q)) {
                char msg[160];
                std::snprintf(msg, sizeof(msg), "t=%.6g q=%d: lhs=%.3g with vanishing rhs", rec.t, rec.q,
                              lhs);
                report.violations.push_back(msg);
            }
            continue;
        }
        c_rhs = std::max(c_rhs, lhs / rhs);
    }

    // Paraproduct flux terms at selected snapshot times, attached to the
    // nearest record of each shell.
    double c_i1 = 0.0, c_i2 = 0.0, c_i3 = 0.0;
    if (max_flux_snapshots > 0 && !snapshots.empty()) {
        std::vector<std::size_t> chosen;
        const std::size_t count = std::min(max_flux_snapshots, snapshots.size());
        for (std::size_t j = 0; j < count; ++j)
            chosen.push_back(count == 1 ? 0 : j * (snapshots.size() - 1) / (count - 1));
        for (std::size_t idx : chosen) {
            const Snapshot& snap = snapshots[idx];
            const auto norms = shell_norms(snap.field, series.s, cutoffs);
            const double three_over_s = series.s == kInfExponent ? 0.0 : 3.0 / series.s;
            for (int q = q_lo; q <= q_hi; ++q) {
                const FluxTerms ft = nonlinear_flux_terms(snap.field, q, series.s, cutoffs);
                // Attach to the nearest record for this shell.
                ShellInequalityRecord* best = nullptr;
                for (auto& rec : report.records) {
                    if (rec.q != q) continue;
                    if (!best || std::abs(rec.t - snap.time) < std::abs(best->t - snap.time)) best = &rec;
                }
                if (best) {
                    best->i1 = ft.i1;
                    best->i2 = ft.i2;
                    best->i3 = ft.i3;
                    best->has_flux = true;
                }
                // Per-term constants against the stated bounds.
                const double mq = norms.at(q);
                if (mq <= report.noise_floor) continue;
                const double mq_pow = std::pow(mq, series.s - 1.0);
                double low1 = 0.0, band_weighted = 0.0, band_plain = 0.0, low2 = 0.0, high3 = 0.0;
                for (const auto& [p, norm] : norms) {
                    if (p <= q) {
                        low1 += std::pow(lambda(p), three_over_s) * norm;
                        low2 += std::pow(lambda(p), three_over_s + 1.0) * norm;
                    }
                    if (std::abs(p - q) <= 2) {
                        band_weighted += lambda(p) * norm;
                        band_plain += norm;
                    }
                    if (p >= q - 3) high3 += norm * norm;
                }
                const double b1 = low1 * band_weighted * mq_pow;
                const double b2 = band_plain * low2 * mq_pow;
                const double b3 = std::pow(lambda(q), 1.0 + three_over_s) * high3 * mq_pow;
                if (b1 > 0.0) c_i1 = std::max(c_i1, ft.i1 / b1);
                if (b2 > 0.0) c_i2 = std::max(c_i2, ft.i2 / b2);
                if (b3 > 0.0) c_i3 = std::max(c_i3, ft.i3 / b3);
            }
        }
    }

    report.constants.defined = have_cvisc;
    report.constants.c_visc = have_cvisc ? c_visc : 0.0;
    report.constants.c_rhs = c_rhs;
    report.constants.c_i1 = c_i1;
    report.constants.c_i2 = c_i2;
    report.constants.c_i3 = c_i3;
    return report;
}

}  // namespace nslab
