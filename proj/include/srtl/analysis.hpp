#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "srtl/filter.hpp"
#include "srtl/fit.hpp"
#include "srtl/grid.hpp"
#include "srtl/interp.hpp"
#include "srtl/parallel.hpp"
#include "srtl/phantom.hpp"

namespace srtl {

template <int N>
ImageGrid<N> rasterize(const Phantom<N>& f, const ImageGeometry<N>& geo) {
    ImageGrid<N> img(geo);
    parallel_for(0, static_cast<std::ptrdiff_t>(geo.size()), [&](std::ptrdiff_t i) { img[i] = f.value(geo.point(i)); });
    return img;
}

// Separable Gaussian blur with sigma in cells, clamped at the border.
template <int N>
ImageGrid<N> gaussian_blur(const ImageGrid<N>& img, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("blur width must be positive");
    const int rad = static_cast<int>(std::ceil(4.0 * sigma));
    std::vector<double> k(2 * rad + 1);
    double s = 0.0;
    for (int i = -rad; i <= rad; ++i) s += k[i + rad] = std::exp(-0.5 * i * i / (sigma * sigma));
    for (double& v : k) v /= s;

    ImageGrid<N> cur = img, next(img.geo);
    for (int axis = 0; axis < N; ++axis) {
        std::size_t stride = 1;
        for (int i = axis + 1; i < N; ++i) stride *= img.geo.count[i];
        const int n = img.geo.count[axis];
        parallel_for(0, static_cast<std::ptrdiff_t>(img.geo.size()), [&](std::ptrdiff_t f) {
            const int pos = static_cast<int>((f / stride) % n);
            double acc = 0.0;
            for (int j = -rad; j <= rad; ++j) {
                const int q = std::clamp(pos + j, 0, n - 1);
                acc += k[j + rad] * cur[f + (static_cast<std::ptrdiff_t>(q) - pos) * static_cast<std::ptrdiff_t>(stride)];
            }
            next[f] = acc;
        });
        std::swap(cur, next);
    }
    return cur;
}

template <int N>
ImageGrid<N> highpass(const ImageGrid<N>& img, double sigma) {
    ImageGrid<N> out = gaussian_blur(img, sigma);
    for (std::size_t i = 0; i < out.values.size(); ++i) out[i] = img[i] - out[i];
    return out;
}

template <int N>
struct Peak {
    Vec<N> point;
    double value = 0.0;
};

struct PeakOptions {
    double quantile = 0.99;
    double highpass_sigma = 0.0;  // cells; 0 keeps the raw residual
    int border = 0;               // cells ignored along every face
};

// Local maxima of |image - reference| at or above the given quantile of its
// values over the kept cells.
template <int N, class Keep>
std::vector<Peak<N>> artifact_peaks(const ImageGrid<N>& image, const ImageGrid<N>& reference, const PeakOptions& opt,
                                    Keep&& keep) {
    if (!(image.geo == reference.geo)) throw std::invalid_argument("artifact_peaks: grid mismatch");
    if (!(opt.quantile >= 0.0 && opt.quantile < 1.0)) throw std::invalid_argument("quantile must lie in [0,1)");
    const auto& geo = image.geo;
    ImageGrid<N> res(geo);
    for (std::size_t i = 0; i < geo.size(); ++i) res[i] = image[i] - reference[i];
    if (opt.highpass_sigma > 0.0) res = highpass(res, opt.highpass_sigma);
    for (double& v : res.values) v = std::abs(v);

    std::vector<char> mask(geo.size(), 0);
    std::vector<double> kept;
    for (std::size_t i = 0; i < geo.size(); ++i) {
        const auto idx = geo.unflatten(i);
        bool in = true;
        for (int a = 0; a < N; ++a) in = in && idx[a] >= opt.border && idx[a] < geo.count[a] - opt.border;
        if (in && keep(geo.point(idx))) {
            mask[i] = 1;
            kept.push_back(res[i]);
        }
    }
    std::vector<Peak<N>> peaks;
    if (kept.empty()) return peaks;
    const std::size_t q = std::min(kept.size() - 1, static_cast<std::size_t>(opt.quantile * kept.size()));
    std::nth_element(kept.begin(), kept.begin() + q, kept.end());
    const double thr = kept[q];

    constexpr int nb = N == 2 ? 9 : 27;
    for (std::size_t i = 0; i < geo.size(); ++i) {
        if (!mask[i] || res[i] < thr || res[i] <= 0.0) continue;
        const auto idx = geo.unflatten(i);
        bool is_max = true;
        for (int o = 0; o < nb && is_max; ++o) {
            std::array<int, N> j = idx;
            int code = o;
            bool self = true;
            for (int a = 0; a < N; ++a) {
                const int d = code % 3 - 1;
                code /= 3;
                j[a] += d;
                self = self && d == 0;
            }
            if (self) continue;
            bool inside = true;
            for (int a = 0; a < N; ++a) inside = inside && j[a] >= 0 && j[a] < geo.count[a];
            if (!inside) continue;
            const std::size_t f = geo.flatten(j);
            // Ties go to the lower flat index so plateaus give one peak.
            if (res[f] > res[i] || (res[f] == res[i] && f < i)) is_max = false;
        }
        if (is_max) peaks.push_back({geo.point(idx), res[i]});
    }
    return peaks;
}

template <int N>
std::vector<Peak<N>> artifact_peaks(const ImageGrid<N>& image, const ImageGrid<N>& reference, double quantile = 0.99) {
    PeakOptions o;
    o.quantile = quantile;
    return artifact_peaks(image, reference, o, [](const Vec<N>&) { return true; });
}

struct LocusMatch {
    double within1 = 0.0;  // fraction of peaks within 1 cell of the locus
    double within2 = 0.0;
    double p95 = 0.0;      // 95th-percentile distance, cells
    std::vector<double> distance;
};

// Match statistics from per-peak distances (already in cells).
inline LocusMatch locus_match_from_distances(std::vector<double> d) {
    if (d.empty()) throw std::invalid_argument("locus_match: no peaks");
    LocusMatch m;
    m.distance = d;
    for (double v : d) {
        m.within1 += v <= 1.0;
        m.within2 += v <= 2.0;
    }
    m.within1 /= d.size();
    m.within2 /= d.size();
    std::sort(d.begin(), d.end());
    const double pos = 0.95 * (d.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, d.size() - 1);
    m.p95 = d[lo] + (pos - lo) * (d[hi] - d[lo]);
    return m;
}

// Distances from each peak to the nearest locus point, in units of `cell`.
template <int N>
LocusMatch locus_match(const std::vector<Vec<N>>& peaks, const std::vector<Vec<N>>& locus, double cell) {
    if (peaks.empty() || locus.empty()) throw std::invalid_argument("locus_match: empty input");
    if (!(cell > 0.0)) throw std::invalid_argument("locus_match: cell must be positive");
    std::vector<double> d(peaks.size());
    parallel_for(0, static_cast<std::ptrdiff_t>(peaks.size()), [&](std::ptrdiff_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : locus) best = std::min(best, distance(peaks[i], q));
        d[i] = best / cell;
    });
    return locus_match_from_distances(std::move(d));
}

// Same statistics against an analytic distance-to-locus function.
template <int N>
LocusMatch locus_match(const std::vector<Vec<N>>& peaks, const std::function<double(const Vec<N>&)>& dist, double cell) {
    if (peaks.empty()) throw std::invalid_argument("locus_match: empty input");
    std::vector<double> d;
    d.reserve(peaks.size());
    for (const auto& p : peaks) d.push_back(dist(p) / cell);
    return locus_match_from_distances(std::move(d));
}

// Directional decay probe: a line profile through `point` along
// `direction`, `window` cells long, whose windowed spectrum is fitted by a
// power law in frequency.
template <int N>
struct RegularityProbe {
    Vec<N> point;
    Vec<N> direction;
    double window = 64.0;  // cells
    int oversample = 4;
    // Reject windows whose gradient shows more than one jump-like peak.
    // Only meaningful for jump edges; kinks have no gradient peak.
    bool require_isolated = true;

    std::vector<double> frequency;  // cycles per cell, quarter-octave centres
    std::vector<double> magnitude;  // band RMS of the windowed spectrum
    double raw_slope = 0.0;         // log-log slope of magnitude
    double exponent = 0.0;          // calibrated decay exponent
    double residual = 0.0;
    bool smooth_floor = false;      // decay too fast to resolve (exponent <= -4)
};

namespace detail {

// Peaks of |d profile / ds| above half the maximum, merged when closer than
// two cells; only the central half of the window is searched.
inline int count_profile_peaks(const std::vector<double>& prof, int oversample) {
    const int n = static_cast<int>(prof.size());
    std::vector<double> g(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) g[i] = std::abs(prof[i + 1] - prof[i - 1]);
    const int lo = n / 4, hi = n - n / 4;
    const double gmax = *std::max_element(g.begin() + lo, g.begin() + hi);
    if (!(gmax > 0.0)) return 0;
    int count = 0, last = -1000000;
    for (int i = std::max(lo, 1); i < std::min(hi, n - 1); ++i) {
        if (g[i] < 0.5 * gmax || g[i] < g[i - 1] || g[i] < g[i + 1]) continue;
        if (i - last >= 2 * oversample) ++count;
        last = i;
    }
    return count;
}

inline std::vector<double> power_spectrum(const std::vector<double>& x, int m) {
    auto in = detail::fftw_alloc<double>(m);
    auto out = detail::fftw_alloc<fftw_complex>(m / 2 + 1);
    std::fill(in.get(), in.get() + m, 0.0);
    std::copy(x.begin(), x.end(), in.get());
    fftw_plan p;
    {
        std::lock_guard lock(detail::fftw_plan_mutex());
        p = fftw_plan_dft_r2c_1d(m, in.get(), out.get(), FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(p);
    }
    std::vector<double> pw(m / 2 + 1);
    for (int j = 0; j <= m / 2; ++j) pw[j] = out[j][0] * out[j][0] + out[j][1] * out[j][1];
    return pw;
}

struct SpectrumFit {
    std::vector<double> frequency, magnitude;
    double slope = 0.0, residual = 0.0;
};

// Gaussian window of width window/8, weighted linear detrend, then the RMS
// magnitude in quarter-octave bands over [4/window, 1/8] cycles per cell.
inline SpectrumFit windowed_spectrum_fit(const std::vector<double>& prof, double window, int os) {
    const int n = static_cast<int>(prof.size());
    std::vector<double> s(n), w(n);
    const double sigma = window / 8.0;
    for (int i = 0; i < n; ++i) {
        s[i] = (i - 0.5 * n) / os;
        w[i] = std::exp(-0.5 * s[i] * s[i] / (sigma * sigma));
    }
    double sw = 0, ss = 0, sss = 0, sy = 0, ssy = 0;
    for (int i = 0; i < n; ++i) {
        sw += w[i];
        ss += w[i] * s[i];
        sss += w[i] * s[i] * s[i];
        sy += w[i] * prof[i];
        ssy += w[i] * s[i] * prof[i];
    }
    const double det = sw * sss - ss * ss;
    const double b = (sw * ssy - ss * sy) / det, a = (sy - b * ss) / sw;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = (prof[i] - a - b * s[i]) * w[i];

    const int m = static_cast<int>(next_pow2(8L * n));
    const auto pw = power_spectrum(x, m);
    const double f_lo = 4.0 / window, f_hi = 0.125;
    if (!(f_hi > f_lo)) throw std::invalid_argument("probe window too short for the fit band");
    SpectrumFit fit;
    for (int j = 0;; ++j) {
        const double f = f_lo * std::pow(2.0, 0.25 * j);
        if (f > f_hi * (1.0 + 1e-9)) break;
        // Bin q is q * os / m cycles per cell.
        const int q0 = static_cast<int>(std::ceil(f * std::pow(2.0, -0.125) * m / os));
        const int q1 = static_cast<int>(std::ceil(f * std::pow(2.0, 0.125) * m / os));
        double acc = 0.0;
        for (int q = q0; q < q1; ++q) acc += pw[q];
        fit.frequency.push_back(f);
        fit.magnitude.push_back(std::max(std::sqrt(acc / std::max(1, q1 - q0)), std::numeric_limits<double>::min()));
    }
    if (fit.frequency.size() < 4) throw std::invalid_argument("probe band has fewer than four scales");
    const PowerLawFit pl = loglog_fit(fit.frequency, fit.magnitude);
    fit.slope = pl.exponent;
    fit.residual = pl.residual;
    return fit;
}

// Raw slopes of the model profiles s_+^alpha through the same window and
// band. The finite window biases the slope by a known, monotone amount over
// alpha in [0, 3]; beyond that the fit saturates.
struct SlopeCalibration {
    std::vector<double> alpha, slope;
};

inline const SlopeCalibration& slope_calibration(double window, int os) {
    static std::mutex mtx;
    static std::map<std::pair<double, int>, SlopeCalibration> cache;
    std::lock_guard lock(mtx);
    auto it = cache.find({window, os});
    if (it != cache.end()) return it->second;
    SlopeCalibration cal;
    const int n = static_cast<int>(std::round(window * os));
    std::vector<double> prof(n);
    for (int k = 0; k <= 60; ++k) {
        const double al = 0.05 * k;
        for (int i = 0; i < n; ++i) {
            const double s = (i - 0.5 * n) / os - 0.3;
            prof[i] = s > 0.0 ? (al == 0.0 ? 1.0 : std::pow(s, al)) : 0.0;
        }
        cal.alpha.push_back(al);
        cal.slope.push_back(windowed_spectrum_fit(prof, window, os).slope);
    }
    return cache.emplace(std::pair{window, os}, std::move(cal)).first->second;
}

}  // namespace detail

// Decay exponent of the profile's spectrum: the windowed-Fourier slope over
// quarter-octave bands in [4 / window, 1/8] cycles per cell, mapped through
// the slope of s_+^alpha seen by the same window, and reported as
// -(alpha + 1). A unit step gives -1, a ramp -2.
template <int N>
RegularityProbe<N> local_regularity_exponent(const ImageGrid<N>& img, RegularityProbe<N> probe) {
    double cell = img.geo.spacing[0];
    for (int i = 1; i < N; ++i) cell = std::min(cell, img.geo.spacing[i]);
    const Vec<N> dir = normalized(probe.direction);
    const int os = probe.oversample;
    if (os < 1) throw std::invalid_argument("oversampling factor must be positive");
    const int n = static_cast<int>(std::round(probe.window * os));
    if (n < 16) throw std::invalid_argument("probe window too short");

    std::vector<double> prof(n);
    for (int i = 0; i < n; ++i) {
        const double s = (i - 0.5 * n) / os;
        const Vec<N> x = probe.point + (s * cell) * dir;
        if (!stencil_inside(img.geo, x)) throw std::invalid_argument("probe window leaves the image");
        prof[i] = interpolate(img, x);
    }
    if (probe.require_isolated && detail::count_profile_peaks(prof, os) > 1)
        throw std::invalid_argument("probe window contains more than one singular feature");

    auto fit = detail::windowed_spectrum_fit(prof, probe.window, os);
    probe.frequency = std::move(fit.frequency);
    probe.magnitude = std::move(fit.magnitude);
    probe.raw_slope = fit.slope;
    probe.residual = fit.residual;

    const auto& cal = detail::slope_calibration(probe.window, os);
    const auto& al = cal.alpha;
    const auto& sl = cal.slope;
    double alpha;
    if (fit.slope >= sl.front()) {
        alpha = al[0] + (fit.slope - sl[0]) * (al[1] - al[0]) / (sl[1] - sl[0]);
    } else {
        std::size_t j = 1;
        while (j < sl.size() && sl[j] > fit.slope) ++j;
        if (j == sl.size()) {
            // Steeper than any resolvable model.
            probe.exponent = std::min(fit.slope, -(al.back() + 1.0));
            probe.smooth_floor = true;
            return probe;
        }
        alpha = al[j - 1] + (fit.slope - sl[j - 1]) * (al[j] - al[j - 1]) / (sl[j] - sl[j - 1]);
    }
    probe.exponent = -(alpha + 1.0);
    probe.smooth_floor = probe.exponent <= -4.0;
    return probe;
}

}  // namespace srtl
