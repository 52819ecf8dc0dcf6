#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "srtl/geometry.hpp"
#include "srtl/phantom.hpp"

namespace srtl {

// Predicted artifact loci of a phantom's ball indicators. For a ball (c,
// rho) the boundary points whose normal line meets a stratum point z are
// y = c +- rho (c - z)/|c - z|; the artifact is y rotated about z (2D
// endpoints, 3D vertices) or about the edge line (3D edges).
template <int N>
class BallLoci {
public:
    BallLoci(const Phantom<N>& f, const GammaSpec<N>& gamma, int edge_samples = 201) {
        for (const auto& comp : f.components)
            if (const auto* b = std::get_if<BallIndicator<N>>(&comp)) add_ball(*b, gamma, edge_samples);
        if (points_.empty()) throw std::invalid_argument("phantom has no ball indicator to predict loci from");
    }

    // Distance to the nearest rotation sphere (circle in 2D) about a point
    // stratum: endpoints in 2D, vertices in 3D.
    double point_distance(const Vec<N>& x) const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& s : points_) m = std::min(m, std::abs(srtl::distance(x, s.center) - s.radius));
        return m;
    }

    // Distance to the nearest edge surface (3D only; infinity in 2D).
    double edge_distance(const Vec<N>& x) const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& e : edges_) {
            // In the half plane (coordinate along the edge, distance to the edge line).
            const double px = x[e.free_axis], py = std::hypot(x[0], x[e.fixed_axis] - e.fixed_value);
            for (std::size_t i = 0; i + 1 < e.curve.size(); ++i) {
                const auto& a = e.curve[i];
                const auto& b = e.curve[i + 1];
                if (a[2] != b[2]) continue;  // curve break between the two radii
                const double vx = b[0] - a[0], vy = b[1] - a[1];
                const double len2 = vx * vx + vy * vy;
                const double t = len2 > 0 ? std::clamp(((px - a[0]) * vx + (py - a[1]) * vy) / len2, 0.0, 1.0) : 0.0;
                m = std::min(m, std::hypot(px - a[0] - t * vx, py - a[1] - t * vy));
            }
        }
        return m;
    }

    double distance(const Vec<N>& x) const { return std::min(point_distance(x), edge_distance(x)); }

    struct Sphere {
        Vec<N> center;
        double radius;
    };
    const std::vector<Sphere>& point_loci() const { return points_; }

private:
    struct EdgeCurve {
        int fixed_axis, free_axis;
        double fixed_value;
        std::vector<std::array<double, 3>> curve;  // (along, radius, branch)
    };

    void add_ball(const BallIndicator<N>& b, const GammaSpec<N>& gamma, int edge_samples) {
        std::vector<Vec<N>> centers;
        if constexpr (N == 2) {
            centers = {Vec<2>{{0.0, gamma.half[0]}}, Vec<2>{{0.0, -gamma.half[0]}}};
        } else {
            for (double s2 : {1.0, -1.0})
                for (double s3 : {1.0, -1.0}) centers.push_back(Vec<3>{{0.0, s2 * gamma.half[0], s3 * gamma.half[1]}});
        }
        for (const auto& z : centers) {
            const double d = srtl::distance(b.center, z);
            points_.push_back({z, d + b.radius});
            if (d > b.radius) points_.push_back({z, d - b.radius});
        }
        if constexpr (N == 3) {
            if (edge_samples < 2) throw std::invalid_argument("edge loci need at least two samples");
            // Edges with x3 = +-b run along x2; edges with x2 = +-a run along x3.
            for (int fixed : {2, 1})
                for (double sgn : {1.0, -1.0}) {
                    EdgeCurve e;
                    e.fixed_axis = fixed;
                    e.free_axis = 3 - fixed;
                    e.fixed_value = sgn * gamma.half[fixed - 1];
                    const double span = gamma.half[e.free_axis - 1];
                    for (int branch = 0; branch < 2; ++branch)
                        for (int i = 0; i < edge_samples; ++i) {
                            Vec<3> z{};
                            z[fixed] = e.fixed_value;
                            z[e.free_axis] = -span + 2.0 * span * i / (edge_samples - 1);
                            const Vec<3> dir = normalized(b.center - z);
                            const Vec<3> y = b.center + (branch ? b.radius : -b.radius) * dir;
                            e.curve.push_back({y[e.free_axis], std::hypot(y[0], y[fixed] - e.fixed_value),
                                               static_cast<double>(branch)});
                        }
                    edges_.push_back(std::move(e));
                }
        }
    }

    std::vector<Sphere> points_;
    std::vector<EdgeCurve> edges_;
};

}  // namespace srtl
