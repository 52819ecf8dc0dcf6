#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "srtl/error.hpp"
#include "srtl/vec.hpp"

namespace srtl {

template <int N>
struct BallIndicator {
    Vec<N> center;
    double radius = 1.0;
    double amplitude = 1.0;

    static constexpr bool radially_symmetric = true;

    double value(const Vec<N>& x) const { return distance(x, center) <= radius ? amplitude : 0.0; }
    Vec<N> support_center() const { return center; }
    double support_radius() const { return radius; }
};

template <int N>
struct GaussianBump {
    Vec<N> center;
    double sigma = 0.1;
    double amplitude = 1.0;

    // Beyond this radius the bump is below 1e-10 of its peak and is
    // treated as zero.
    static constexpr double cutoff_sigmas = 6.7856;
    static constexpr bool radially_symmetric = true;

    double value(const Vec<N>& x) const {
        const Vec<N> d = x - center;
        const double r2 = dot(d, d);
        if (r2 > support_radius() * support_radius()) return 0.0;
        return amplitude * std::exp(-0.5 * r2 / (sigma * sigma));
    }
    Vec<N> support_center() const { return center; }
    double support_radius() const { return cutoff_sigmas * sigma; }
};

// A smoothed step across the plane normal.x = offset, multiplied by a
// smooth compactly supported window so the component stays inside x1 > 0.
template <int N>
struct SmoothedEdge {
    Vec<N> normal;
    double offset = 0.0;
    double width = 0.05;
    double amplitude = 1.0;
    Vec<N> window_center;
    double window_radius = 0.5;

    static constexpr bool radially_symmetric = false;

    double value(const Vec<N>& x) const {
        const double r = distance(x, window_center) / window_radius;
        if (r >= 1.0) return 0.0;
        const double window = std::exp(1.0 - 1.0 / (1.0 - r * r));
        const double s = (dot(normal, x) - offset) / (norm(normal) * width);
        return amplitude * 0.5 * (1.0 + std::tanh(s)) * window;
    }
    Vec<N> support_center() const { return window_center; }
    double support_radius() const { return window_radius; }
};

template <int N>
using Component = std::variant<BallIndicator<N>, GaussianBump<N>, SmoothedEdge<N>>;

template <int N>
struct Phantom {
    std::vector<Component<N>> components;

    double value(const Vec<N>& x) const {
        double v = 0.0;
        for (const auto& c : components) v += std::visit([&](const auto& k) { return k.value(x); }, c);
        return v;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : components)
            m += std::visit([](const auto& k) { return std::abs(k.amplitude); }, c);
        return m;
    }

    // Every support ball must stay in x1 > margin.
    void validate(double margin = 1e-3) const {
        for (const auto& c : components) {
            const auto [lo, r] = std::visit(
                [](const auto& k) { return std::pair{k.support_center()[0], k.support_radius()}; }, c);
            if (!(r > 0.0)) throw PreconditionError("phantom component with nonpositive size");
            if (lo - r <= margin)
                throw PreconditionError("phantom component reaches x1 <= " + std::to_string(margin));
        }
    }
};

}  // namespace srtl
