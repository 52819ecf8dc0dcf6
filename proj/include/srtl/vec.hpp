#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace srtl {

template <int N>
struct Vec {
    static_assert(N == 2 || N == 3);
    std::array<double, N> v{};

    constexpr double& operator[](std::size_t i) { return v[i]; }
    constexpr const double& operator[](std::size_t i) const { return v[i]; }

    constexpr Vec& operator+=(const Vec& o) {
        for (int i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    constexpr Vec& operator-=(const Vec& o) {
        for (int i = 0; i < N; ++i) v[i] -= o.v[i];
        return *this;
    }
    constexpr Vec& operator*=(double s) {
        for (auto& c : v) c *= s;
        return *this;
    }
    friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
    friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
    friend constexpr Vec operator/(Vec a, double s) { return a *= 1.0 / s; }
    friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
    friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <int N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <int N>
inline double norm(const Vec<N>& a) {
    return std::sqrt(dot(a, a));
}

template <int N>
inline double distance(const Vec<N>& a, const Vec<N>& b) {
    return norm(a - b);
}

template <int N>
inline Vec<N> normalized(const Vec<N>& a) {
    return a / norm(a);
}

}  // namespace srtl
