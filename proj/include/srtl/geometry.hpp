#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srtl/vec.hpp"

namespace srtl {

// A point of the open half space {x1 > 0} paired with a nonzero direction.
template <int N>
struct Covector {
    Vec<N> x;
    Vec<N> xi;

    bool valid() const { return x[0] > 0.0 && norm(xi) > 0.0; }
};

// Detector set on the plane {x1 = 0}: the interval [-1,1] on the z2 axis
// in 2D, the rectangle [-a,a] x [-b,b] in 3D.
template <int N>
struct GammaSpec {
    std::array<double, N - 1> half;

    GammaSpec() { half.fill(1.0); }

    static GammaSpec interval() requires(N == 2) { return GammaSpec{}; }

    static GammaSpec rectangle(double a, double b) requires(N == 3) {
        if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("rectangle half-widths must be positive");
        GammaSpec g;
        g.half = {a, b};
        return g;
    }

    // Is z (on the plane) inside the closed detector set, with slack tol?
    bool contains(const Vec<N>& z, double tol = 0.0) const {
        for (int i = 1; i < N; ++i)
            if (std::abs(z[i]) > half[i - 1] + tol) return false;
        return true;
    }

    // 2D endpoints: sign +1 gives z+ = (0,1).
    Vec<N> endpoint(int sign) const requires(N == 2) { return Vec<N>{{0.0, sign > 0 ? half[0] : -half[0]}}; }

    // Vertices v1..v4 = (0,a,b), (0,a,-b), (0,-a,b), (0,-a,-b).
    Vec<N> vertex(int j) const requires(N == 3) {
        const double a = half[0], b = half[1];
        switch (j) {
            case 1: return {{0.0, a, b}};
            case 2: return {{0.0, a, -b}};
            case 3: return {{0.0, -a, b}};
            case 4: return {{0.0, -a, -b}};
            default: throw std::invalid_argument("vertex index must be in 1..4");
        }
    }
};

enum class ZoneKind { Visible, Invisible, Boundary, Corner, Edge };

// Boundary: index is the endpoint sign (+1 / -1). Corner: vertex 1..4.
// Edge: 5,6 are z3 = +b,-b; 7,8 are z2 = -a,+a.
struct Zone {
    ZoneKind kind = ZoneKind::Invisible;
    int index = 0;

    friend bool operator==(const Zone&, const Zone&) = default;

    std::string name() const {
        switch (kind) {
            case ZoneKind::Visible: return "visible";
            case ZoneKind::Invisible: return "invisible";
            case ZoneKind::Boundary: return index > 0 ? "boundary+" : "boundary-";
            case ZoneKind::Corner: return "corner" + std::to_string(index);
            case ZoneKind::Edge: return "edge" + std::to_string(index);
        }
        return "?";
    }
};

template <int N>
std::optional<Vec<N>> line_plane_intersection(const Covector<N>& cov) {
    if (cov.xi[0] == 0.0) return std::nullopt;
    Vec<N> z = cov.x - (cov.x[0] / cov.xi[0]) * cov.xi;
    z[0] = 0.0;
    return z;
}

namespace detail {

inline Zone classify_point(const Vec<2>& z, const GammaSpec<2>& g, double tol) {
    const double e = std::abs(z[1]) - g.half[0];
    if (e > tol) return {ZoneKind::Invisible, 0};
    if (std::abs(e) <= tol) return {ZoneKind::Boundary, z[1] > 0 ? 1 : -1};
    return {ZoneKind::Visible, 0};
}

inline Zone classify_point(const Vec<3>& z, const GammaSpec<3>& g, double tol) {
    const double e2 = std::abs(z[1]) - g.half[0];
    const double e3 = std::abs(z[2]) - g.half[1];
    if (e2 > tol || e3 > tol) return {ZoneKind::Invisible, 0};
    const bool on2 = std::abs(e2) <= tol;
    const bool on3 = std::abs(e3) <= tol;
    if (on2 && on3) {
        const int j = z[1] > 0 ? (z[2] > 0 ? 1 : 2) : (z[2] > 0 ? 3 : 4);
        return {ZoneKind::Corner, j};
    }
    if (on3) return {ZoneKind::Edge, z[2] > 0 ? 5 : 6};
    if (on2) return {ZoneKind::Edge, z[1] > 0 ? 8 : 7};
    return {ZoneKind::Visible, 0};
}

}  // namespace detail

// The line (not the ray) through x along xi decides the zone.
template <int N>
Zone classify_covector(const Covector<N>& cov, const GammaSpec<N>& gamma, double tol = 1e-12) {
    auto z = line_plane_intersection(cov);
    if (!z) return {ZoneKind::Invisible, 0};
    return detail::classify_point(*z, gamma, tol);
}

// Rotation center of a boundary-zone covector: the endpoint, the vertex,
// or for edges the point where the line meets the edge.
template <int N>
Vec<N> rotation_center(const Covector<N>& cov, const Zone& zone, const GammaSpec<N>& gamma) {
    if constexpr (N == 2) {
        if (zone.kind != ZoneKind::Boundary) throw std::invalid_argument("2D rotation center needs a boundary zone");
        return gamma.endpoint(zone.index);
    } else {
        if (zone.kind == ZoneKind::Corner) return gamma.vertex(zone.index);
        if (zone.kind != ZoneKind::Edge) throw std::invalid_argument("3D rotation center needs a corner or edge zone");
        auto z = line_plane_intersection(cov);
        if (!z) throw std::invalid_argument("edge-zone covector is parallel to the detector plane");
        Vec<3> c = *z;
        switch (zone.index) {
            case 5: c[2] = gamma.half[1]; break;
            case 6: c[2] = -gamma.half[1]; break;
            case 7: c[1] = -gamma.half[0]; break;
            case 8: c[1] = gamma.half[0]; break;
            default: throw std::invalid_argument("edge index must be in 5..8");
        }
        return c;
    }
}

// Samples the orbit of (y, eta) under rotation about the zone's center
// (circle, sphere, or circle about an edge line), clipped to x1 > 0.
template <int N>
std::vector<Covector<N>> artifact_locus(const Covector<N>& cov, const Zone& zone, const GammaSpec<N>& gamma,
                                        int nsamples) {
    if (zone.kind == ZoneKind::Visible || zone.kind == ZoneKind::Invisible)
        throw std::invalid_argument("artifact_locus needs a boundary, corner or edge zone");
    if (nsamples <= 0) throw std::invalid_argument("nsamples must be positive");

    const Vec<N> center = rotation_center(cov, zone, gamma);
    const Vec<N> ry = cov.x - center;
    const double tau = dot(cov.xi, ry) / dot(ry, ry);
    const double pi = std::numbers::pi;

    std::vector<Covector<N>> out;
    out.reserve(nsamples);
    auto emit = [&](const Vec<N>& x) { out.push_back({x, tau * (x - center)}); };

    if constexpr (N == 2) {
        const double r = norm(ry);
        for (int i = 0; i < nsamples; ++i) {
            const double phi = -pi / 2 + pi * (i + 0.5) / nsamples;
            emit(center + Vec<2>{{r * std::cos(phi), r * std::sin(phi)}});
        }
    } else if (zone.kind == ZoneKind::Corner) {
        // Fibonacci points on the hemisphere facing x1 > 0.
        const double r = norm(ry);
        const double golden = pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < nsamples; ++i) {
            const double u = (i + 0.5) / nsamples;
            const double s = std::sqrt(1.0 - u * u);
            const double th = golden * i;
            emit(center + r * Vec<3>{{u, s * std::cos(th), s * std::sin(th)}});
        }
    } else {
        // Circle in the plane of the frozen coordinate, about the edge line.
        const int frozen = (zone.index <= 6) ? 1 : 2;
        const int moving = 3 - frozen;
        const double r = std::hypot(cov.x[0], cov.x[moving] - center[moving]);
        for (int i = 0; i < nsamples; ++i) {
            const double phi = -pi / 2 + pi * (i + 0.5) / nsamples;
            Vec<3> x;
            x[0] = r * std::cos(phi);
            x[frozen] = cov.x[frozen];
            x[moving] = center[moving] + r * std::sin(phi);
            emit(x);
        }
    }
    return out;
}

}  // namespace srtl
