#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "srtl/filter.hpp"

using namespace srtl;
using Catch::Approx;

namespace {

const double pi = std::numbers::pi;

std::vector<double> gaussian_row(int nt, double t_max, double t0, double s) {
    std::vector<double> r(nt);
    for (int j = 0; j < nt; ++j) {
        const double t = t_max * (j + 1) / nt;
        r[j] = std::exp(-(t - t0) * (t - t0) / (2 * s * s));
    }
    r[0] = r[1] = 0.0;
    return r;
}

// P h(r) straight from its double-integral definition:
// 2 Re int_0^L lambda^p e^{-i r^2 lambda} int_0^inf e^{i tau^2 lambda} h(tau) dtau dlambda.
double direct_P(int p, double r, double t0, double s, double lambda_max) {
    using boost::math::quadrature::gauss_kronrod;
    auto inner = [&](double lam) {
        auto re = [&](double tau) { return std::cos(tau * tau * lam) * std::exp(-(tau - t0) * (tau - t0) / (2 * s * s)); };
        auto im = [&](double tau) { return std::sin(tau * tau * lam) * std::exp(-(tau - t0) * (tau - t0) / (2 * s * s)); };
        const double a = t0 - 9 * s, b = t0 + 9 * s;
        const int panels = 64;
        double sr = 0, si = 0;
        for (int k = 0; k < panels; ++k) {
            const double lo = a + (b - a) * k / panels, hi = a + (b - a) * (k + 1) / panels;
            sr += gauss_kronrod<double, 31>::integrate(re, lo, hi, 0, 0);
            si += gauss_kronrod<double, 31>::integrate(im, lo, hi, 0, 0);
        }
        return std::complex<double>(sr, si);
    };
    const int panels = 400;
    double acc = 0;
    for (int k = 0; k < panels; ++k) {
        const double lo = lambda_max * k / panels, hi = lambda_max * (k + 1) / panels;
        auto f = [&](double lam) {
            return (std::pow(lam, p) * std::exp(std::complex<double>(0, -r * r * lam)) * inner(lam)).real();
        };
        acc += boost::math::quadrature::gauss<double, 15>::integrate(f, lo, hi);
    }
    return 2 * acc;
}

}  // namespace

TEST_CASE("plan sizes", "[filter]") {
    const FilterPlan plan(2, 1000, 4.0, FilterOptions{4, 2, 1.0, false});
    CHECK(plan.nu() == 2048);
    CHECK(plan.padded() == 8192);
    CHECK(plan.du() == Approx(16.0 / 2047));
    CHECK_THROWS_AS(FilterPlan(2, 1000, 4.0, FilterOptions{3, 2, 1.0, false}), std::invalid_argument);
    CHECK_THROWS_AS(FilterPlan(4, 1000, 4.0), std::invalid_argument);
}

TEST_CASE("zero row stays zero; support precondition", "[filter]") {
    const FilterPlan plan(2, 256, 3.0);
    std::vector<double> zero(256, 0.0);
    for (double v : apply_P(zero, plan)) CHECK(v == 0.0);
    std::vector<double> bad(256, 0.0);
    bad[1] = 1e-3;
    CHECK_THROWS_AS(apply_P(bad, plan), PreconditionError);
}

TEST_CASE("discrete Fourier modes are eigenvectors", "[filter]") {
    for (int dim : {2, 3}) {
        const FilterPlan plan(dim, 256, 3.0);
        const int m = plan.padded();
        for (int j : {3, 40, 200, 700}) {
            std::vector<double> buf(m);
            for (int i = 0; i < m; ++i) buf[i] = std::cos(2 * pi * j * i / m);
            plan.apply_multiplier(buf.data());
            const double mu = plan.multiplier()[j];
            for (int i = 0; i < m; i += 17) CHECK(buf[i] == Approx(mu * std::cos(2 * pi * j * i / m)).margin(1e-9 * std::abs(mu)));
            // Mid-band the multiplier is |lambda|^(n-1).
            const double lam = plan.frequency(j);
            if (j >= 40) CHECK(mu == Approx(std::pow(lam, dim - 1)).epsilon(2e-2));
        }
    }
}

TEST_CASE("band limit zeroes the multiplier above the cutoff", "[filter]") {
    const FilterPlan plan(2, 256, 3.0, FilterOptions{4, 2, 0.25, false});
    const double W = plan.cutoff_frequency();
    for (int j = 0; j <= plan.padded() / 2; ++j) {
        const double lam = plan.frequency(j);
        if (lam > 1.05 * W) CHECK(std::abs(plan.multiplier()[j]) <= 2e-2 * W);
        if (lam > 0.2 * W && lam < 0.8 * W) CHECK(plan.multiplier()[j] == Approx(lam).epsilon(3e-2));
    }
}

TEST_CASE("filter is independent of the pad factor", "[filter]") {
    const auto row = gaussian_row(512, 4.0, 2.0, 0.1);
    for (int dim : {2, 3}) {
        const FilterPlan p4(dim, 512, 4.0, FilterOptions{4, 2, 1.0, false});
        const FilterPlan p8(dim, 512, 4.0, FilterOptions{8, 2, 1.0, false});
        const auto a = apply_P(row, p4), b = apply_P(row, p8);
        double peak = 0;
        for (double v : a) peak = std::max(peak, std::abs(v));
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-6 * peak);
    }
}

TEST_CASE("filter is linear and commutes with u-shifts", "[filter]") {
    const FilterPlan plan(3, 256, 3.0);
    const int m = plan.padded(), nu = plan.nu();
    auto bump = [&](double c) {
        std::vector<double> v(m, 0.0);
        for (int i = 0; i < nu; ++i) v[i] = std::exp(-(i - c) * (i - c) / 50.0);
        return v;
    };
    auto a = bump(150), b = bump(170), ab(a);
    for (int i = 0; i < m; ++i) ab[i] = 2 * a[i] - 0.5 * b[i];
    plan.apply_multiplier(a.data());
    plan.apply_multiplier(b.data());
    plan.apply_multiplier(ab.data());
    double peak = 0;
    for (int i = 0; i < nu; ++i) peak = std::max(peak, std::abs(a[i]));
    for (int i = 0; i < nu; ++i) CHECK(std::abs(ab[i] - (2 * a[i] - 0.5 * b[i])) <= 1e-12 * peak);
    for (int i = 0; i + 20 < nu; ++i) CHECK(std::abs(b[i + 20] - a[i]) <= 1e-6 * peak);
}

TEST_CASE("filter matches the defining double integral", "[filter]") {
    const int nt = 1024;
    const double t_max = 4.0, t0 = 1.5, s = 0.1;
    const auto row = gaussian_row(nt, t_max, t0, s);
    for (int dim : {2, 3}) {
        const FilterPlan plan(dim, nt, t_max, FilterOptions{4, 4, 1.0, false});
        const auto out = apply_P(row, plan);
        double peak = 0;
        for (double v : out) peak = std::max(peak, std::abs(v));
        for (int j : {330, 360, 384, 410, 440}) {
            const double r = t_max * (j + 1) / nt;
            // The u-spectrum of the row lives below ~1/(2 t0 s); 60 keeps the tail negligible.
            const double ref = direct_P(dim - 1, r, t0, s, 60.0);
            CHECK(out[j] == Approx(ref).margin(1e-3 * peak));
        }
    }
}

TEST_CASE("chi mask on sinogram rows", "[filter]") {
    const auto g = SinogramGeometry<2>::make({7}, {1.5}, 8, 2.0);  // z2 = -1.5, -1, ..., 1.5
    SinogramGrid<2> s(g);
    for (double& v : s.values) v = 1.0;
    const auto k0 = apply_chi_mask(s, CutoffSpec<2>::uniform(CutoffProfile::polynomial(0), GammaSpec<2>::interval()));
    const auto k1 = apply_chi_mask(s, CutoffSpec<2>::uniform(CutoffProfile::polynomial(1), GammaSpec<2>::interval()));
    CHECK(k0.row(5)[3] == 1.0);  // z2 = 1.0
    CHECK(k0.row(6)[3] == 0.0);  // z2 = 1.5, outside Gamma
    CHECK(k1.row(4)[3] == Approx(0.75));  // z2 = 0.5
    CHECK(k1.row(0)[0] == 0.0);
}
