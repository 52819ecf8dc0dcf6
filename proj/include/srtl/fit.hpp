#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace srtl {

struct PowerLawFit {
    double exponent = 0.0;
    double log_coeff = 0.0;
    double residual = 0.0;  // RMS of the log-magnitude residuals
};

// Least squares of log y = log_coeff + exponent * log x.
inline PowerLawFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power-law fit needs matching samples");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("power-law fit needs positive samples");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("power-law fit needs distinct abscissae");
    PowerLawFit f;
    f.exponent = sxy / sxx;
    f.log_coeff = my - f.exponent * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = ly[i] - (f.log_coeff + f.exponent * lx[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

inline std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("bad geometric grid");
    std::vector<double> g(n);
    const double r = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i);
    g.back() = hi;
    return g;
}

}  // namespace srtl
