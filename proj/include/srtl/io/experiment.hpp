#pragma once

// Experiment objects built from a Config. Every malformed or inconsistent
// value surfaces as ConfigError.
//
//   [experiment] dim = 2 | 3
//   [phantom]    ball = c1 .. cn radius amplitude          (repeatable)
//                gaussian = c1 .. cn sigma amplitude        (repeatable)
//                edge = n1 .. nn offset width amplitude w1 .. wn window_radius
//   [detector]   half_window = a [b]   count = n2 [n3]   radii = nt   t_max = T
//   [cutoff]     family = polynomial | plateau   k = 0   taper = 0.5
//                side = both | plus | minus
//   [image]      lo = ..   hi = ..   count = ..
//   [filter]     pad, nu_factor, bandwidth, apodize, matched, matched_scale

#include <string>
#include <vector>

#include "srtl/cutoff.hpp"
#include "srtl/error.hpp"
#include "srtl/geometry.hpp"
#include "srtl/grid.hpp"
#include "srtl/io/config.hpp"
#include "srtl/phantom.hpp"
#include "srtl/reconstruct.hpp"

namespace srtl::io {

namespace detail {

template <class F>
auto as_config_error(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

inline std::vector<double> fixed_doubles(const Config& c, const std::string& s, const std::string& k,
                                         std::size_t n) {
    auto v = c.get_doubles(s, k);
    if (v.size() != n)
        throw ConfigError(c.source() + ": [" + s + "] " + k + " needs " + std::to_string(n) + " numbers, got " +
                          std::to_string(v.size()));
    return v;
}

template <int N>
Vec<N> take_vec(const std::vector<double>& v, std::size_t at) {
    Vec<N> x{};
    for (int i = 0; i < N; ++i) x[i] = v[at + i];
    return x;
}

inline std::vector<double> entry_doubles(const Config& c, const Config::Entry& e, const std::string& s,
                                         std::size_t n) {
    const std::string where = c.source() + ":" + std::to_string(e.line) + ": [" + s + "] " + e.key;
    auto v = Config::split_doubles(e.value, where);
    if (v.size() != n)
        throw ConfigError(where + " needs " + std::to_string(n) + " numbers, got " + std::to_string(v.size()));
    return v;
}

}  // namespace detail

inline int experiment_dim(const Config& c) {
    const long d = c.get_int("experiment", "dim");
    if (d != 2 && d != 3) throw ConfigError(c.source() + ": [experiment] dim must be 2 or 3");
    return static_cast<int>(d);
}

// An empty [phantom] section (or none) is the zero phantom.
template <int N>
Phantom<N> phantom_from(const Config& c) {
    Phantom<N> f;
    for (const auto& e : c.get_all("phantom", "ball")) {
        const auto v = detail::entry_doubles(c, e, "phantom", N + 2);
        if (!(v[N] > 0.0)) throw ConfigError(c.source() + ":" + std::to_string(e.line) + ": ball radius must be positive");
        f.components.push_back(BallIndicator<N>{detail::take_vec<N>(v, 0), v[N], v[N + 1]});
    }
    for (const auto& e : c.get_all("phantom", "gaussian")) {
        const auto v = detail::entry_doubles(c, e, "phantom", N + 2);
        if (!(v[N] > 0.0)) throw ConfigError(c.source() + ":" + std::to_string(e.line) + ": sigma must be positive");
        f.components.push_back(GaussianBump<N>{detail::take_vec<N>(v, 0), v[N], v[N + 1]});
    }
    for (const auto& e : c.get_all("phantom", "edge")) {
        const auto v = detail::entry_doubles(c, e, "phantom", 2 * N + 4);
        SmoothedEdge<N> s;
        s.normal = detail::take_vec<N>(v, 0);
        s.offset = v[N];
        s.width = v[N + 1];
        s.amplitude = v[N + 2];
        s.window_center = detail::take_vec<N>(v, N + 3);
        s.window_radius = v[2 * N + 3];
        if (!(norm(s.normal) > 0.0) || !(s.width > 0.0) || !(s.window_radius > 0.0))
            throw ConfigError(c.source() + ":" + std::to_string(e.line) + ": bad edge component");
        f.components.push_back(s);
    }
    return f;
}

template <int N>
SinogramGeometry<N> detector_from(const Config& c) {
    const auto hw = detail::fixed_doubles(c, "detector", "half_window", N - 1);
    const auto cnt = detail::fixed_doubles(c, "detector", "count", N - 1);
    std::array<int, N - 1> nz{};
    std::array<double, N - 1> half{};
    for (int i = 0; i < N - 1; ++i) {
        if (cnt[i] != std::floor(cnt[i])) throw ConfigError(c.source() + ": [detector] count must be integers");
        nz[i] = static_cast<int>(cnt[i]);
        half[i] = hw[i];
    }
    const long nt = c.get_int("detector", "radii");
    const double t_max = c.get_double("detector", "t_max");
    return detail::as_config_error(c.source() + ": [detector]", [&] {
        return SinogramGeometry<N>::make(nz, half, static_cast<int>(nt), t_max);
    });
}

// The cutoff is supported on the detector window.
template <int N>
GammaSpec<N> gamma_from(const Config& c) {
    const auto hw = detail::fixed_doubles(c, "detector", "half_window", N - 1);
    GammaSpec<N> gamma;
    for (int i = 0; i < N - 1; ++i) {
        if (!(hw[i] > 0.0)) throw ConfigError(c.source() + ": [detector] half_window must be positive");
        gamma.half[i] = hw[i];
    }
    return gamma;
}

template <int N>
CutoffSpec<N> cutoff_from(const Config& c, const GammaSpec<N>& gamma) {
    const std::string family = c.get_string("cutoff", "family", "polynomial");
    const long k = c.get_int("cutoff", "k", 0);
    const std::string side = c.get_string("cutoff", "side", "both");
    return detail::as_config_error(c.source() + ": [cutoff]", [&] {
        CutoffProfile p;
        if (family == "polynomial")
            p = CutoffProfile::polynomial(static_cast<int>(k));
        else if (family == "plateau")
            p = CutoffProfile::plateau(static_cast<int>(k), c.get_double("cutoff", "taper", 0.5));
        else
            throw ConfigError(c.source() + ": [cutoff] family must be polynomial or plateau");
        if (side == "plus")
            p = p.one_sided(Side::Plus);
        else if (side == "minus")
            p = p.one_sided(Side::Minus);
        else if (side != "both")
            throw ConfigError(c.source() + ": [cutoff] side must be both, plus or minus");
        return CutoffSpec<N>::uniform(p, gamma);
    });
}

template <int N>
ImageGeometry<N> image_from(const Config& c) {
    const auto lo = detail::fixed_doubles(c, "image", "lo", N);
    const auto hi = detail::fixed_doubles(c, "image", "hi", N);
    const auto cnt = detail::fixed_doubles(c, "image", "count", N);
    std::array<int, N> n{};
    for (int i = 0; i < N; ++i) {
        if (cnt[i] != std::floor(cnt[i]) || !(hi[i] > lo[i]))
            throw ConfigError(c.source() + ": [image] needs hi > lo and integer counts");
        n[i] = static_cast<int>(cnt[i]);
    }
    return detail::as_config_error(c.source() + ": [image]", [&] {
        return ImageGeometry<N>::box(detail::take_vec<N>(lo, 0), detail::take_vec<N>(hi, 0), n);
    });
}

inline ReconstructOptions filter_from(const Config& c) {
    ReconstructOptions o;
    o.filter.pad = static_cast<int>(c.get_int("filter", "pad", o.filter.pad));
    o.filter.nu_factor = static_cast<int>(c.get_int("filter", "nu_factor", o.filter.nu_factor));
    o.filter.bandwidth = c.get_double("filter", "bandwidth", o.filter.bandwidth);
    o.filter.apodize = c.get_bool("filter", "apodize", o.filter.apodize);
    o.matched_bandwidth = c.get_bool("filter", "matched", false);
    o.matched_scale = c.get_double("filter", "matched_scale", 1.0);
    if (!(o.filter.bandwidth > 0.0 && o.filter.bandwidth <= 1.0))
        throw ConfigError(c.source() + ": [filter] bandwidth must lie in (0,1]");
    if (!(o.matched_scale > 0.0)) throw ConfigError(c.source() + ": [filter] matched_scale must be positive");
    if (o.filter.nu_factor < 2) throw ConfigError(c.source() + ": [filter] nu_factor must be at least 2");
    if (o.filter.pad < 2 || (o.filter.pad & (o.filter.pad - 1)))
        throw ConfigError(c.source() + ": [filter] pad must be a power of two >= 2");
    return o;
}

}  // namespace srtl::io
