#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "srtl/vec.hpp"

namespace srtl {

// Node grid x_i = lo + i * spacing on a box inside {x1 > 0}; values are
// stored row-major with the last axis fastest.
template <int N>
struct ImageGeometry {
    Vec<N> lo;
    Vec<N> spacing;
    std::array<int, N> count{};

    static ImageGeometry box(const Vec<N>& lo, const Vec<N>& hi, const std::array<int, N>& count) {
        ImageGeometry g;
        g.lo = lo;
        g.count = count;
        for (int i = 0; i < N; ++i) {
            if (count[i] < 2) throw std::invalid_argument("image axes need at least two samples");
            g.spacing[i] = (hi[i] - lo[i]) / (count[i] - 1);
        }
        g.validate();
        return g;
    }

    void validate() const {
        if (!(lo[0] > 0.0)) throw std::invalid_argument("image region must lie in x1 > 0");
        for (int i = 0; i < N; ++i)
            if (count[i] < 1 || !(spacing[i] > 0.0)) throw std::invalid_argument("bad image axis");
    }

    std::size_t size() const {
        std::size_t n = 1;
        for (int c : count) n *= static_cast<std::size_t>(c);
        return n;
    }

    Vec<N> hi() const {
        Vec<N> h;
        for (int i = 0; i < N; ++i) h[i] = lo[i] + (count[i] - 1) * spacing[i];
        return h;
    }

    std::array<int, N> unflatten(std::size_t flat) const {
        std::array<int, N> idx{};
        for (int i = N - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(flat % count[i]);
            flat /= count[i];
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, N>& idx) const {
        std::size_t f = 0;
        for (int i = 0; i < N; ++i) f = f * count[i] + idx[i];
        return f;
    }

    Vec<N> point(const std::array<int, N>& idx) const {
        Vec<N> x;
        for (int i = 0; i < N; ++i) x[i] = lo[i] + idx[i] * spacing[i];
        return x;
    }
    Vec<N> point(std::size_t flat) const { return point(unflatten(flat)); }

    // Continuous index coordinates of x.
    Vec<N> to_index(const Vec<N>& x) const {
        Vec<N> u;
        for (int i = 0; i < N; ++i) u[i] = (x[i] - lo[i]) / spacing[i];
        return u;
    }

    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < N; ++i) v *= spacing[i];
        return v;
    }

    friend bool operator==(const ImageGeometry&, const ImageGeometry&) = default;
};

template <int N>
struct ImageGrid {
    ImageGeometry<N> geo;
    std::vector<double> values;

    ImageGrid() = default;
    explicit ImageGrid(const ImageGeometry<N>& g) : geo(g), values(g.size(), 0.0) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    double& at(const std::array<int, N>& idx) { return values[geo.flatten(idx)]; }
    double at(const std::array<int, N>& idx) const { return values[geo.flatten(idx)]; }
};

// Detector samples on [-L, L] per lateral axis (end points included) and
// radius samples t_j = t_max (j + 1) / nt, j = 0..nt-1. Values are stored
// one contiguous t-row per detector.
template <int N>
struct SinogramGeometry {
    std::array<int, N - 1> nz{};
    std::array<double, N - 1> half_window{};
    int nt = 0;
    double t_max = 0.0;

    static SinogramGeometry make(const std::array<int, N - 1>& nz, const std::array<double, N - 1>& half_window,
                                 int nt, double t_max) {
        SinogramGeometry g{nz, half_window, nt, t_max};
        g.validate();
        return g;
    }

    void validate() const {
        for (int i = 0; i < N - 1; ++i)
            if (nz[i] < 2 || !(half_window[i] > 0.0)) throw std::invalid_argument("bad detector axis");
        if (nt < 4 || !(t_max > 0.0)) throw std::invalid_argument("bad radius axis");
    }

    std::size_t detectors() const {
        std::size_t n = 1;
        for (int c : nz) n *= static_cast<std::size_t>(c);
        return n;
    }
    std::size_t size() const { return detectors() * static_cast<std::size_t>(nt); }

    double dz(int axis) const { return 2.0 * half_window[axis] / (nz[axis] - 1); }
    double dt() const { return t_max / nt; }
    double t(int j) const { return t_max * (j + 1) / nt; }

    std::array<int, N - 1> detector_index(std::size_t d) const {
        std::array<int, N - 1> idx{};
        for (int i = N - 2; i >= 0; --i) {
            idx[i] = static_cast<int>(d % nz[i]);
            d /= nz[i];
        }
        return idx;
    }

    Vec<N> detector(std::size_t d) const {
        const auto idx = detector_index(d);
        Vec<N> z{};
        for (int i = 0; i < N - 1; ++i) z[i + 1] = -half_window[i] + idx[i] * dz(i);
        return z;
    }

    // Trapezoid weight of a detector sample.
    double weight(std::size_t d) const {
        const auto idx = detector_index(d);
        double w = 1.0;
        for (int i = 0; i < N - 1; ++i) {
            const bool end = idx[i] == 0 || idx[i] == nz[i] - 1;
            w *= end ? 0.5 * dz(i) : dz(i);
        }
        return w;
    }

    friend bool operator==(const SinogramGeometry&, const SinogramGeometry&) = default;
};

template <int N>
struct SinogramGrid {
    SinogramGeometry<N> geo;
    std::vector<double> values;

    SinogramGrid() = default;
    explicit SinogramGrid(const SinogramGeometry<N>& g) : geo(g), values(g.size(), 0.0) {}

    double* row(std::size_t d) { return values.data() + d * geo.nt; }
    const double* row(std::size_t d) const { return values.data() + d * geo.nt; }
};

}  // namespace srtl
