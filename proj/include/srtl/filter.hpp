#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "srtl/cutoff.hpp"
#include "srtl/error.hpp"
#include "srtl/grid.hpp"
#include "srtl/parallel.hpp"
#include "srtl/spline.hpp"

namespace srtl {

struct FilterOptions {
    int pad = 4;          // padded length = pad * N_u, power of two
    int nu_factor = 2;    // N_u = next power of two >= nu_factor * N_t
    double bandwidth = 1.0;  // fraction of the u-Nyquist frequency kept
    bool apodize = false;    // cosine roll-off inside the band
};

namespace detail {

inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

inline bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

inline long next_pow2(long n) {
    long p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

// Samples at u = n du of the band-limited kernel whose spectrum is
// |w|^p on |w| <= W (inverse transform with the 1/(2 pi) convention).
inline double bandlimited_kernel(int p, double W, double u) {
    const double pi = std::numbers::pi;
    if (u == 0.0) return p == 1 ? W * W / (2.0 * pi) : W * W * W / (3.0 * pi);
    const double s = std::sin(W * u), c = std::cos(W * u);
    if (p == 1) return (W * s / u + (c - 1.0) / (u * u)) / pi;
    return (W * W * s / u + 2.0 * W * c / (u * u) - 2.0 * s / (u * u * u)) / pi;
}

}  // namespace detail

// The radial filter P for dimension n: in u = t^2 it is 2 pi times the
// Fourier multiplier |lambda|^(n-1). The multiplier is the exact DFT of
// the band-limited kernel truncated to the padded length, so with pad >= 2
// the convolution is linear (no wrap-around) for data on the u-grid.
class FilterPlan {
public:
    FilterPlan(int dim, int nt, double t_max, const FilterOptions& opt = {})
        : exponent_(dim - 1), nt_(nt), t_max_(t_max), opt_(opt) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("filter dimension must be 2 or 3");
        if (nt < 4 || !(t_max > 0.0)) throw std::invalid_argument("bad t-grid for the filter");
        if (opt.pad < 2 || !detail::is_pow2(opt.pad)) throw std::invalid_argument("pad factor must be a power of two >= 2");
        if (opt.nu_factor < 2) throw std::invalid_argument("u-grid must have at least 2 N_t points");
        if (!(opt.bandwidth > 0.0 && opt.bandwidth <= 1.0)) throw std::invalid_argument("bandwidth must lie in (0,1]");
        nu_ = static_cast<int>(detail::next_pow2(static_cast<long>(opt.nu_factor) * nt));
        m_ = nu_ * opt.pad;
        du_ = t_max * t_max / (nu_ - 1);
        build();
    }

    ~FilterPlan() {
        std::lock_guard lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    FilterPlan(const FilterPlan&) = delete;
    FilterPlan& operator=(const FilterPlan&) = delete;

    int exponent() const { return exponent_; }
    int nu() const { return nu_; }
    int padded() const { return m_; }
    double du() const { return du_; }
    int nt() const { return nt_; }
    double t_max() const { return t_max_; }
    const FilterOptions& options() const { return opt_; }
    double cutoff_frequency() const { return opt_.bandwidth * std::numbers::pi / du_; }
    const std::vector<double>& multiplier() const { return mult_; }

    // Angular frequency of DFT bin j on the padded grid.
    double frequency(int j) const { return 2.0 * std::numbers::pi * j / (m_ * du_); }

    // In-place multiplier on a real array of length padded().
    void apply_multiplier(double* buf) const {
        auto spec = detail::fftw_alloc<fftw_complex>(m_ / 2 + 1);
        fftw_execute_dft_r2c(forward_, buf, spec.get());
        for (int j = 0; j <= m_ / 2; ++j) {
            spec[j][0] *= mult_[j];
            spec[j][1] *= mult_[j];
        }
        fftw_execute_dft_c2r(backward_, spec.get(), buf);
        const double inv = 1.0 / m_;
        for (int i = 0; i < m_; ++i) buf[i] *= inv;
    }

    // Filters one t-row sampled at t_j = t_max (j+1) / nt.
    std::vector<double> apply(const double* row) const {
        if (row[0] != 0.0 || row[1] != 0.0)
            throw PreconditionError("filter input must vanish on the first two radius samples");
        const double dt = t_max_ / nt_;
        const UniformSpline h(row, nt_, dt, dt);

        auto buf = detail::fftw_alloc<double>(m_);
        std::fill(buf.get(), buf.get() + m_, 0.0);
        const double u_lo = dt * dt;
        for (int i = 1; i < nu_; ++i) {
            const double u = i * du_;
            if (u < u_lo) continue;
            const double t = std::min(std::sqrt(u), t_max_);
            buf[i] = h(t) / (2.0 * t);
        }
        apply_multiplier(buf.get());

        const UniformSpline g(buf.get(), nu_, 0.0, du_);
        std::vector<double> out(nt_);
        const double c = 2.0 * std::numbers::pi;
        for (int j = 0; j < nt_; ++j) {
            const double t = t_max_ * (j + 1) / nt_;
            out[j] = c * g(t * t);
        }
        return out;
    }

private:
    void build() {
        auto in = detail::fftw_alloc<double>(m_);
        auto spec = detail::fftw_alloc<fftw_complex>(m_ / 2 + 1);
        {
            std::lock_guard lock(detail::fftw_plan_mutex());
            forward_ = fftw_plan_dft_r2c_1d(m_, in.get(), spec.get(), FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_1d(m_, spec.get(), in.get(), FFTW_ESTIMATE);
        }
        const double W = cutoff_frequency();
        for (int i = 0; i < m_; ++i) {
            const int n = i <= m_ / 2 ? i : i - m_;
            in[i] = detail::bandlimited_kernel(exponent_, W, n * du_);
        }
        fftw_execute_dft_r2c(forward_, in.get(), spec.get());
        mult_.resize(m_ / 2 + 1);
        for (int j = 0; j <= m_ / 2; ++j) {
            double v = du_ * spec[j][0];
            if (opt_.apodize) {
                const double w = frequency(j) / W;
                v *= w < 1.0 ? std::cos(0.5 * std::numbers::pi * w) : 0.0;
            }
            mult_[j] = v;
        }
    }

    int exponent_;
    int nt_;
    double t_max_;
    FilterOptions opt_;
    int nu_ = 0;
    int m_ = 0;
    double du_ = 0.0;
    std::vector<double> mult_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

inline std::vector<double> apply_P(const std::vector<double>& row, const FilterPlan& plan) {
    if (static_cast<int>(row.size()) != plan.nt()) throw std::invalid_argument("row length does not match the plan");
    return plan.apply(row.data());
}

// Rows multiplied by chi(z); rows outside Gamma become zero.
template <int N>
SinogramGrid<N> apply_chi_mask(const SinogramGrid<N>& sino, const CutoffSpec<N>& spec) {
    SinogramGrid<N> out = sino;
    for (std::size_t d = 0; d < sino.geo.detectors(); ++d) {
        const double c = eval_chi(spec, sino.geo.detector(d));
        double* r = out.row(d);
        for (int j = 0; j < sino.geo.nt; ++j) r[j] *= c;
    }
    return out;
}

// P applied to every nonzero row.
template <int N>
SinogramGrid<N> filter_sinogram(const SinogramGrid<N>& sino, const FilterPlan& plan) {
    if (plan.nt() != sino.geo.nt || plan.t_max() != sino.geo.t_max)
        throw std::invalid_argument("filter plan does not match the sinogram t-grid");
    if (plan.exponent() != N - 1) throw std::invalid_argument("filter plan dimension mismatch");
    SinogramGrid<N> out(sino.geo);
    parallel_for(0, static_cast<std::ptrdiff_t>(sino.geo.detectors()), [&](std::ptrdiff_t d) {
        const double* r = sino.row(d);
        if (std::none_of(r, r + sino.geo.nt, [](double v) { return v != 0.0; })) return;
        const auto f = plan.apply(r);
        std::copy(f.begin(), f.end(), out.row(d));
    });
    return out;
}

}  // namespace srtl
