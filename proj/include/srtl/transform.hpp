#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "srtl/error.hpp"
#include "srtl/grid.hpp"
#include "srtl/parallel.hpp"
#include "srtl/phantom.hpp"
#include "srtl/spline.hpp"
#include "srtl/vec.hpp"

namespace srtl {

// Closed-form mean-value integral of a ball indicator over S(z, t): arc
// length in 2D, spherical-cap area in 3D (times the amplitude).
template <int N>
double forward_oracle(const BallIndicator<N>& ball, const Vec<N>& z, double t) {
    const double pi = std::numbers::pi;
    const double d = distance(z, ball.center);
    const double rho = ball.radius;
    if (t <= 0.0) return 0.0;
    if (t + d <= rho) return ball.amplitude * (N == 2 ? 2.0 * pi * t : 4.0 * pi * t * t);
    if (t <= d - rho || t >= d + rho) return 0.0;
    if constexpr (N == 2) {
        const double c = std::clamp((d * d + t * t - rho * rho) / (2.0 * d * t), -1.0, 1.0);
        return ball.amplitude * 2.0 * t * std::acos(c);
    } else {
        return ball.amplitude * pi * t * (rho * rho - (d - t) * (d - t)) / d;
    }
}

namespace detail {

constexpr double quad_tol = 1e-11;
constexpr unsigned quad_depth = 14;

// Angular interval of S(z, t) inside the ball (c, R): half-angle about the
// axis from z to c, or nullopt-like negative when disjoint.
inline double cap_half_angle(double d, double R, double t) {
    if (t <= d - R || t >= d + R) return -1.0;
    if (t + d <= R) return std::numbers::pi;
    return std::acos(std::clamp((d * d + t * t - R * R) / (2.0 * d * t), -1.0, 1.0));
}

template <class F>
double integrate(F&& f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(f, a, b, quad_depth, quad_tol);
}

// Mean-value integral of a smooth component restricted to its support ball.
template <class C>
double sphere_integral(const C& comp, const Vec<2>& z, double t) {
    const Vec<2> c = comp.support_center();
    const Vec<2> axis = c - z;
    const double d = norm(axis);
    const double alpha = cap_half_angle(d, comp.support_radius(), t);
    if (alpha < 0.0) return 0.0;
    const double th0 = std::atan2(axis[1], axis[0]);
    auto f = [&](double th) { return comp.value(z + t * Vec<2>{{std::cos(th), std::sin(th)}}); };
    return t * integrate(f, th0 - alpha, th0 + alpha);
}

template <class C>
double sphere_integral(const C& comp, const Vec<3>& z, double t) {
    const Vec<3> c = comp.support_center();
    const Vec<3> axis = c - z;
    const double d = norm(axis);
    const double alpha = cap_half_angle(d, comp.support_radius(), t);
    if (alpha < 0.0) return 0.0;
    const Vec<3> e = axis / d;
    // Orthonormal frame (e, u, v).
    Vec<3> helper = std::abs(e[0]) < 0.9 ? Vec<3>{{1, 0, 0}} : Vec<3>{{0, 1, 0}};
    Vec<3> u = normalized(helper - dot(helper, e) * e);
    Vec<3> v{{e[1] * u[2] - e[2] * u[1], e[2] * u[0] - e[0] * u[2], e[0] * u[1] - e[1] * u[0]}};

    // Periodic trapezoid in azimuth, doubled until converged. Components
    // symmetric about their center are constant on each ring.
    auto ring = [&](double beta) {
        const double cb = std::cos(beta), sb = std::sin(beta);
        if constexpr (C::radially_symmetric)
            return 2.0 * std::numbers::pi * comp.value(z + t * (cb * e + sb * u)) * sb;
        auto sum_at = [&](int n, int offset, int stride) {
            double s = 0.0;
            for (int i = offset; i < n; i += stride) {
                const double ph = 2.0 * std::numbers::pi * i / n;
                s += comp.value(z + t * (cb * e + sb * (std::cos(ph) * u + std::sin(ph) * v)));
            }
            return s;
        };
        int n = 16;
        double total = sum_at(n, 0, 1);
        double prev = 2.0 * std::numbers::pi * total / n;
        while (n < 4096) {
            total += sum_at(2 * n, 1, 2);
            n *= 2;
            const double cur = 2.0 * std::numbers::pi * total / n;
            if (std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) return cur * sb;
            prev = cur;
        }
        return prev * sb;
    };
    return t * t * integrate(ring, 0.0, alpha);
}

template <int N>
double component_integral(const Component<N>& comp, const Vec<N>& z, double t) {
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, BallIndicator<N>>)
                return forward_oracle(k, z, t);
            else
                return sphere_integral(k, z, t);
        },
        comp);
}

}  // namespace detail

// Largest detector-to-support distance; forward needs t_max beyond it.
template <int N>
double required_t_max(const Phantom<N>& f, const SinogramGeometry<N>& g) {
    double need = 0.0;
    for (const auto& c : f.components) {
        const auto [ctr, r] =
            std::visit([](const auto& k) { return std::pair{k.support_center(), k.support_radius()}; }, c);
        double lat = 0.0;
        for (int i = 1; i < N; ++i) {
            const double e = std::abs(ctr[i]) + g.half_window[i - 1];
            lat += e * e;
        }
        need = std::max(need, std::sqrt(ctr[0] * ctr[0] + lat) + r);
    }
    return need;
}

template <int N>
SinogramGrid<N> forward(const Phantom<N>& f, const SinogramGeometry<N>& g, double margin = 1e-3) {
    g.validate();
    f.validate(margin);
    const double need = required_t_max(f, g);
    if (need > g.t_max)
        throw PreconditionError("t_max " + std::to_string(g.t_max) + " does not cover the phantom support (needs " +
                                std::to_string(need) + ")");
    SinogramGrid<N> s(g);
    parallel_for(0, static_cast<std::ptrdiff_t>(g.detectors()), [&](std::ptrdiff_t d) {
        const Vec<N> z = g.detector(d);
        double* row = s.row(d);
        for (int j = 0; j < g.nt; ++j) {
            const double t = g.t(j);
            double v = 0.0;
            for (const auto& c : f.components) v += detail::component_integral(c, z, t);
            row[j] = v;
        }
    });
    return s;
}

// Range of |x - z| over the image box for a detector point z.
template <int N>
std::pair<double, double> distance_range(const ImageGeometry<N>& geo, const Vec<N>& z) {
    const Vec<N> lo = geo.lo, hi = geo.hi();
    double near2 = 0.0, far2 = 0.0;
    for (int i = 0; i < N; ++i) {
        const double c = std::clamp(z[i], lo[i], hi[i]);
        near2 += (c - z[i]) * (c - z[i]);
        const double f = std::max(std::abs(lo[i] - z[i]), std::abs(hi[i] - z[i]));
        far2 += f * f;
    }
    return {std::sqrt(near2), std::sqrt(far2)};
}

// Quadrature of g(z, |x - z|) over detector samples with trapezoid weights;
// each t-row is interpolated by a natural cubic spline. Rows that are
// identically zero are skipped.
template <int N>
ImageGrid<N> backproject(const SinogramGrid<N>& sino, const ImageGeometry<N>& geo) {
    geo.validate();
    const auto& sg = sino.geo;
    std::vector<std::size_t> active;
    for (std::size_t d = 0; d < sg.detectors(); ++d) {
        const double* r = sino.row(d);
        if (std::any_of(r, r + sg.nt, [](double v) { return v != 0.0; })) active.push_back(d);
    }
    const double t_lo = sg.t(0), t_hi = sg.t_max;
    for (std::size_t d : active) {
        const auto [near, far] = distance_range(geo, sg.detector(d));
        if (far > t_hi * (1.0 + 1e-12) || near < t_lo)
            throw PreconditionError("backprojection needs radii in [" + std::to_string(near) + ", " +
                                    std::to_string(far) + "] but the t-grid covers [" + std::to_string(t_lo) +
                                    ", " + std::to_string(t_hi) + "]");
    }

    std::vector<UniformSpline> splines(active.size());
    parallel_for(0, static_cast<std::ptrdiff_t>(active.size()),
                 [&](std::ptrdiff_t i) { splines[i].assign(sino.row(active[i]), sg.nt, t_lo, sg.dt()); });

    ImageGrid<N> out(geo);
    const std::size_t slab = geo.size() / geo.count[0];
    parallel_for(0, geo.count[0], [&](std::ptrdiff_t i0) {
        double* acc = out.values.data() + i0 * slab;
        std::vector<Vec<N>> pts(slab);
        for (std::size_t s = 0; s < slab; ++s) pts[s] = geo.point(i0 * slab + s);
        for (std::size_t a = 0; a < active.size(); ++a) {
            const Vec<N> z = sg.detector(active[a]);
            const double w = sg.weight(active[a]);
            const UniformSpline& sp = splines[a];
            for (std::size_t s = 0; s < slab; ++s) acc[s] += w * sp(distance(pts[s], z));
        }
    });
    return out;
}

}  // namespace srtl
