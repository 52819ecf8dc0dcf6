#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace srtl {

// Natural cubic spline on uniform nodes x0 + i*h. Values and second
// derivatives are interleaved so one evaluation touches one cache line.
class UniformSpline {
public:
    UniformSpline() = default;

    UniformSpline(const double* y, int n, double x0, double h) { assign(y, n, x0, h); }

    void assign(const double* y, int n, double x0, double h) {
        n_ = n;
        x0_ = x0;
        h_ = h;
        inv_h_ = 1.0 / h;
        ym_.assign(2 * static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) ym_[2 * i] = y[i];
        if (n < 3) return;
        // Thomas algorithm for M[i-1] + 4 M[i] + M[i+1] = 6 (second difference) / h^2.
        std::vector<double> c(n, 0.0), d(n, 0.0);
        const double s = 6.0 / (h * h);
        for (int i = 1; i < n - 1; ++i) {
            const double rhs = s * (y[i - 1] - 2.0 * y[i] + y[i + 1]);
            const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
            c[i] = 1.0 / denom;
            d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
        }
        double next = 0.0;
        for (int i = n - 2; i >= 1; --i) {
            next = d[i] - c[i] * next;
            ym_[2 * i + 1] = next;
        }
    }

    int size() const { return n_; }
    double lo() const { return x0_; }
    double hi() const { return x0_ + (n_ - 1) * h_; }

    double operator()(double x) const {
        double u = (x - x0_) * inv_h_;
        int j = static_cast<int>(u);
        j = std::clamp(j, 0, n_ - 2);
        const double s = u - j;
        const double r = 1.0 - s;
        const double* p = ym_.data() + 2 * j;
        const double c = h_ * h_ / 6.0;
        return r * p[0] + s * p[2] + c * ((r * r * r - r) * p[1] + (s * s * s - s) * p[3]);
    }

private:
    int n_ = 0;
    double x0_ = 0.0, h_ = 1.0, inv_h_ = 1.0;
    std::vector<double> ym_;
};

// Keys cubic convolution weights (a = -1/2) for fractional offset s in [0,1).
inline void keys_weights(double s, double w[4]) {
    const double s2 = s * s, s3 = s2 * s;
    w[0] = -0.5 * s3 + s2 - 0.5 * s;
    w[1] = 1.5 * s3 - 2.5 * s2 + 1.0;
    w[2] = -1.5 * s3 + 2.0 * s2 + 0.5 * s;
    w[3] = 0.5 * s3 - 0.5 * s2;
}

}  // namespace srtl
