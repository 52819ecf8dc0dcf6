#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "srtl/cutoff.hpp"
#include "srtl/fit.hpp"
#include "srtl/vec.hpp"

namespace srtl {

using cplx = std::complex<double>;

namespace detail {

// Points where the profile switches formula; panels never straddle them.
inline std::vector<double> profile_breakpoints(const CutoffProfile& h) {
    std::vector<double> b{h.c, h.d};
    if (h.family == TaperFamily::Plateau) {
        const double len = h.taper * 0.5 * (h.d - h.c);
        for (double f : {1.0 / 3.0, 2.0 / 3.0}) {
            b.push_back(h.c + f * len);
            b.push_back(h.d - f * len);
        }
    }
    if (h.side != Side::Both) {
        b.push_back(h.split_lo());
        b.push_back(h.split_hi());
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }), b.end());
    return b;
}

}  // namespace detail

// int exp(-i omega tau) f(tau) dtau over [bp.front(), bp.back()], with f
// smooth between consecutive breakpoints. Gauss-Legendre on panels no
// longer than half an oscillation and at least 64 panels over the range.
// Panel-centre phases are reduced in long double; otherwise rounding of
// omega * tau sets an absolute floor near 1e-16 that hides high-order decay.
template <class F>
cplx oscillatory_integral(F&& f, const std::vector<double>& bp, double omega) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    using ld = long double;
    if (bp.size() < 2) throw std::invalid_argument("oscillatory integral needs an interval");
    const double span = bp.back() - bp.front();
    const double max_len = std::min(span / 64.0, omega == 0.0 ? span : std::numbers::pi / std::abs(omega));
    std::vector<double> x, w;
    for (std::size_t j = 0; j < GL::abscissa().size(); ++j) {
        const double a = GL::abscissa()[j], wt = GL::weights()[j];
        x.push_back(a);
        w.push_back(wt);
        if (a != 0.0) {
            x.push_back(-a);
            w.push_back(wt);
        }
    }
    std::complex<ld> total = 0.0L;
    std::vector<cplx> offset(x.size());
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        if (!(bp[i + 1] > bp[i])) continue;
        const int np = std::max(1, static_cast<int>(std::ceil((bp[i + 1] - bp[i]) / max_len)));
        const double len = (bp[i + 1] - bp[i]) / np, half = 0.5 * len;
        for (std::size_t j = 0; j < x.size(); ++j) offset[j] = std::polar(1.0, -omega * half * x[j]);
        for (int p = 0; p < np; ++p) {
            const ld mid = bp[i] + (p + 0.5L) * len;
            cplx panel = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) panel += w[j] * f(static_cast<double>(mid + half * x[j])) * offset[j];
            total += static_cast<ld>(half) * std::complex<ld>(panel.real(), panel.imag()) *
                     std::polar(1.0L, -static_cast<ld>(omega) * mid);
        }
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

// A(s, t, lambda) = int_c^d exp(-2i (s - t) tau lambda) h(tau) dtau.
inline cplx oscillatory_A(const CutoffProfile& h, double s, double t, double lambda) {
    return oscillatory_integral([&](double tau) { return h.evaluate(tau); }, detail::profile_breakpoints(h),
                                2.0 * (s - t) * lambda);
}

enum class Endpoint { C, D };

// Leading symbol term at one endpoint: +h^(k)(c) / [2i(s-t)lambda]^(k+1)
// at c and -h^(k)(d) / [...]^(k+1) at d, with k the order there. Zero at
// the dead end of a one-sided profile.
inline cplx leading_term(const CutoffProfile& h, Endpoint e, double s, double t, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("leading term needs lambda != 0");
    if (s == t) throw std::invalid_argument("leading term needs s != t");
    const int k = e == Endpoint::C ? h.order_at_lo() : h.order_at_hi();
    if (k < 0) return 0.0;
    const double tau = e == Endpoint::C ? h.c : h.d;
    const double hk = eval_cutoff(h, tau, k);
    const cplx denom = std::pow(cplx(0.0, 2.0 * (s - t) * lambda), k + 1);
    return (e == Endpoint::C ? hk : -hk) / denom;
}

// exp(-2i(s-t) tau lambda) at an endpoint, the phase that multiplies the
// leading term in the expansion of A.
inline cplx endpoint_phase(const CutoffProfile& h, Endpoint e, double s, double t, double lambda) {
    const double tau = e == Endpoint::C ? h.c : h.d;
    return std::polar(1.0, -2.0 * (s - t) * tau * lambda);
}

struct DecayFit {
    std::vector<double> lambda;
    std::vector<double> magnitude;
    double exponent = 0.0;
    double log_coeff = 0.0;
    double residual = 0.0;

    double model(double l) const { return std::exp(log_coeff) * std::pow(l, exponent); }
};

inline DecayFit fit_decay_order(std::vector<double> lambda, std::vector<double> magnitude) {
    if (lambda.size() != magnitude.size()) throw std::invalid_argument("lambda and magnitude lengths differ");
    if (lambda.size() < 12) throw std::invalid_argument("decay fit needs at least 12 samples");
    const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
    if (!(*lo > 0.0) || *hi / *lo < 100.0 * (1.0 - 1e-12))
        throw std::invalid_argument("decay fit needs lambda spanning two decades");
    for (double m : magnitude)
        if (!(m > 0.0)) throw std::invalid_argument("decay fit needs positive magnitudes");
    const PowerLawFit f = loglog_fit(lambda, magnitude);
    DecayFit d;
    d.lambda = std::move(lambda);
    d.magnitude = std::move(magnitude);
    d.exponent = f.exponent;
    d.log_coeff = f.log_coeff;
    d.residual = f.residual;
    return d;
}

// Default sweep: 25 geometric samples on [1e2, 1e4].
inline std::vector<double> default_lambda_grid() { return geometric_grid(1e2, 1e4, 25); }

template <class F>
DecayFit decay_sweep(F&& magnitude_at, const std::vector<double>& lambda = default_lambda_grid()) {
    std::vector<double> m(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) m[i] = magnitude_at(lambda[i]);
    return fit_decay_order(lambda, m);
}

// lambda^2 A(h2; x2, y2) A(h3; x3, y3): the factorized amplitude of the 3D
// kernel near a vertex or edge.
inline cplx kernel_amplitude_3d(const CutoffProfile& h2, const CutoffProfile& h3, const Vec3& x, const Vec3& y,
                                double lambda) {
    return lambda * lambda * oscillatory_A(h2, x[1], y[1], lambda) * oscillatory_A(h3, x[2], y[2], lambda);
}

// |lambda| A(h; x2, y2): the 2D analog near an endpoint of Gamma.
inline cplx kernel_amplitude_2d(const CutoffProfile& h, const Vec2& x, const Vec2& y, double lambda) {
    return std::abs(lambda) * oscillatory_A(h, x[1], y[1], lambda);
}

}  // namespace srtl
