#pragma once

#include <algorithm>
#include <cmath>

#include "srtl/grid.hpp"
#include "srtl/spline.hpp"

namespace srtl {

// Separable Keys cubic interpolation; indices are clamped at the border.
template <int N>
double interpolate(const ImageGrid<N>& img, const Vec<N>& x) {
    const Vec<N> u = img.geo.to_index(x);
    std::array<int, N> base{};
    double w[N][4];
    for (int i = 0; i < N; ++i) {
        const double f = std::floor(u[i]);
        base[i] = static_cast<int>(f) - 1;
        keys_weights(u[i] - f, w[i]);
    }
    auto clampi = [&](int i, int axis) { return std::clamp(i, 0, img.geo.count[axis] - 1); };
    double acc = 0.0;
    if constexpr (N == 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                acc += w[0][a] * w[1][b] * img.at({clampi(base[0] + a, 0), clampi(base[1] + b, 1)});
    } else {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    acc += w[0][a] * w[1][b] * w[2][c] *
                           img.at({clampi(base[0] + a, 0), clampi(base[1] + b, 1), clampi(base[2] + c, 2)});
    }
    return acc;
}

// Is the 4-point interpolation stencil of x fully inside the grid?
template <int N>
bool stencil_inside(const ImageGeometry<N>& g, const Vec<N>& x) {
    const Vec<N> u = g.to_index(x);
    for (int i = 0; i < N; ++i)
        if (u[i] < 1.0 || u[i] > g.count[i] - 3.0) return false;
    return true;
}

}  // namespace srtl
