#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "srtl/asymptotics.hpp"

using namespace srtl;
using Catch::Approx;

namespace {

// Coefficients of (1 - tau^2)^k, lowest power first.
std::vector<double> poly_coeffs(int k) {
    std::vector<double> c{1.0};
    for (int i = 0; i < k; ++i) {
        std::vector<double> n(c.size() + 2, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            n[j] += c[j];
            n[j + 2] -= c[j];
        }
        c = n;
    }
    return c;
}

double poly_derivative(const std::vector<double>& c, int d, double x) {
    double s = 0.0;
    for (std::size_t j = d; j < c.size(); ++j) {
        double f = 1.0;
        for (int q = 0; q < d; ++q) f *= static_cast<double>(j - q);
        s += c[j] * f * std::pow(x, static_cast<double>(j - d));
    }
    return s;
}

// Exact A for h = (1 - tau^2)^k on [-1, 1]: repeated integration by
// parts terminates after deg h + 1 terms.
std::complex<double> exact_A(int k, double omega) {
    const auto c = poly_coeffs(k);
    const std::complex<double> io(0.0, omega);
    std::complex<double> sum = 0.0, p = io;
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
        sum += (std::exp(io) * poly_derivative(c, j, -1.0) - std::exp(-io) * poly_derivative(c, j, 1.0)) / p;
        p *= io;
    }
    return sum;
}

}  // namespace

TEST_CASE("oscillatory integral of the constant profile", "[asymptotics]") {
    const auto h = CutoffProfile::polynomial(0);
    for (double lambda : {0.5, 3.0, 10.0, 250.0, 4000.0}) {
        const auto a = oscillatory_A(h, 0.5, 0.0, lambda);
        CHECK(a.real() == Approx(2.0 * std::sin(lambda) / lambda).margin(1e-15));
        CHECK(std::abs(a.imag()) < 1e-15);
    }
    CHECK(oscillatory_A(h, 0.2, 0.2, 7.0).real() == Approx(2.0));
}

TEST_CASE("oscillatory integral matches the terminating parts expansion", "[asymptotics]") {
    for (int k = 0; k <= 3; ++k) {
        const auto h = CutoffProfile::polynomial(k);
        for (double lambda : {1.0, 17.0, 300.0, 5000.0}) {
            const double st = 0.35;
            const auto a = oscillatory_A(h, st, 0.0, lambda), e = exact_A(k, 2.0 * st * lambda);
            INFO("k=" << k << " lambda=" << lambda);
            CHECK(std::abs(a - e) <= 1e-12 * std::abs(e) + 1e-16);
        }
    }
}

TEST_CASE("plateau and one-sided profiles agree with adaptive quadrature", "[asymptotics]") {
    using boost::math::quadrature::gauss_kronrod;
    const std::vector<CutoffProfile> profiles{CutoffProfile::plateau(2, 0.6), CutoffProfile::polynomial(1).one_sided(Side::Plus),
                                              CutoffProfile::plateau(1, 0.4, -0.5, 2.0).one_sided(Side::Minus)};
    for (const auto& h : profiles) {
        const double omega = 2.0 * 0.4 * 6.0;
        auto re = [&](double x) { return h(x) * std::cos(omega * x); };
        auto im = [&](double x) { return -h(x) * std::sin(omega * x); };
        std::complex<double> ref;
        const auto bp = detail::profile_breakpoints(h);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            ref += std::complex<double>(gauss_kronrod<double, 61>::integrate(re, bp[i], bp[i + 1], 15, 1e-12),
                    gauss_kronrod<double, 61>::integrate(im, bp[i], bp[i + 1], 15, 1e-12));
        }
        CHECK(std::abs(oscillatory_A(h, 0.4, 0.0, 6.0) - ref) <= 1e-11 * std::abs(ref) + 1e-14);
    }
}

TEST_CASE("smooth compactly supported amplitude decays faster than any power", "[asymptotics]") {
    auto bump = [](double x) { return std::abs(x) < 0.8 ? std::exp(1.0 - 1.0 / (1.0 - x * x / 0.64)) : 0.0; };
    const std::vector<double> bp{-1.0, -0.8, 0.8, 1.0};
    auto mag = [&](double omega) { return std::abs(oscillatory_integral(bump, bp, omega)); };
    // Envelope over one octave at the start of the band.
    double env = 0.0;
    for (double l : geometric_grid(1e2, 2e2, 16)) env = std::max(env, mag(l));
    for (double l : geometric_grid(2e2, 1e4, 30)) {
        INFO("lambda=" << l);
        CHECK(mag(l) <= env * std::pow(l / 1e2, -6.0) + 5e-16);
    }
}

TEST_CASE("one-sided profile decays at order -k-1", "[asymptotics]") {
    // Minus keeps the endpoint c and vanishes near d.
    const auto h = CutoffProfile::polynomial(1).one_sided(Side::Minus);
    const auto fit = decay_sweep([&](double l) { return std::abs(oscillatory_A(h, 0.5, 0.0, l)); });
    CHECK(fit.exponent == Approx(-2.0).margin(0.05));
    for (int k = 0; k <= 2; ++k)
        for (double st : {0.3, 0.7}) {
            const auto hk = CutoffProfile::polynomial(k).one_sided(Side::Minus);
            const auto f = decay_sweep([&](double l) {
                return std::abs(oscillatory_A(hk, st, 0.0, l) / endpoint_phase(hk, Endpoint::C, st, 0.0, l));
            });
            INFO("k=" << k << " s-t=" << st);
            CHECK(f.exponent == Approx(-(k + 1.0)).margin(0.1));
        }
}

TEST_CASE("leading term values and preconditions", "[asymptotics]") {
    const auto h0 = CutoffProfile::polynomial(0);
    const auto lt = leading_term(h0, Endpoint::C, 0.5, 0.0, 10.0);
    CHECK(lt.real() == Approx(0.0).margin(1e-15));
    CHECK(lt.imag() == Approx(-0.1));
    CHECK(leading_term(h0, Endpoint::D, 0.5, 0.0, 10.0).imag() == Approx(0.1));

    // Dead ends: h+ vanishes near c, h- near d.
    const auto h1 = CutoffProfile::polynomial(1);
    CHECK(leading_term(h1.one_sided(Side::Plus), Endpoint::C, 0.5, 0.0, 10.0) == std::complex<double>(0.0));
    CHECK(leading_term(h1.one_sided(Side::Minus), Endpoint::D, 0.5, 0.0, 10.0) == std::complex<double>(0.0));

    // h = 1 - tau^2: h'(-1) = 2, so the c-term is 2 / (2i * 0.25 * 4)^2 = -0.5.
    CHECK(leading_term(h1, Endpoint::C, 0.25, 0.0, 4.0).real() == Approx(-0.5));

    CHECK_THROWS_AS(leading_term(h1, Endpoint::C, 0.5, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(leading_term(h1, Endpoint::C, 0.5, 0.5, 3.0), std::invalid_argument);
}

TEST_CASE("leading term dominates at large lambda", "[asymptotics]") {
    for (int k = 0; k <= 2; ++k)
        for (double st : {0.3, 0.7}) {
            const auto hm = CutoffProfile::polynomial(k).one_sided(Side::Minus);
            const auto hp = CutoffProfile::polynomial(k).one_sided(Side::Plus);
            const double l = 1e4;
            const auto rc = oscillatory_A(hm, st, 0.0, l) /
                            (endpoint_phase(hm, Endpoint::C, st, 0.0, l) * leading_term(hm, Endpoint::C, st, 0.0, l));
            const auto rd = oscillatory_A(hp, st, 0.0, l) /
                            (endpoint_phase(hp, Endpoint::D, st, 0.0, l) * leading_term(hp, Endpoint::D, st, 0.0, l));
            INFO("k=" << k << " s-t=" << st);
            CHECK(std::abs(rc - 1.0) < 0.02);
            CHECK(std::abs(rd - 1.0) < 0.02);
        }
}

TEST_CASE("remainder after the leading term is at least one order smaller", "[asymptotics]") {
    for (int k = 0; k <= 3; ++k)
        for (Endpoint e : {Endpoint::C, Endpoint::D})
            for (double st : {0.3, 0.7}) {
                const auto h = CutoffProfile::polynomial(k).one_sided(e == Endpoint::C ? Side::Minus : Side::Plus);
                std::vector<double> ls, lead, rem;
                for (double l : default_lambda_grid()) {
                    const auto lt = endpoint_phase(h, e, st, 0.0, l) * leading_term(h, e, st, 0.0, l);
                    // Keep samples whose next term is well above the quadrature floor.
                    if (std::abs(lt) / l < 1e-15) continue;
                    ls.push_back(l);
                    lead.push_back(std::abs(lt));
                    rem.push_back(std::abs(oscillatory_A(h, st, 0.0, l) - lt));
                }
                INFO("k=" << k << " end=" << (e == Endpoint::C ? "c" : "d") << " s-t=" << st);
                REQUIRE(ls.size() >= 8);
                CHECK(loglog_fit(ls, rem).exponent <= loglog_fit(ls, lead).exponent - 0.9);
            }
}

TEST_CASE("decay fit on synthetic magnitudes", "[asymptotics]") {
    const auto l = default_lambda_grid();
    std::vector<double> m(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) m[i] = std::pow(l[i], -2.0);
    const auto f = fit_decay_order(l, m);
    CHECK(f.exponent == Approx(-2.0).margin(1e-12));
    CHECK(f.residual < 1e-12);
    CHECK(f.model(500.0) == Approx(std::pow(500.0, -2.0)).epsilon(1e-10));

    for (std::size_t i = 0; i < l.size(); ++i) m[i] = (1.0 + 0.1 / l[i]) / l[i];
    CHECK(fit_decay_order(l, m).exponent == Approx(-1.0).margin(0.02));

    std::fill(m.begin(), m.end(), 3.5);
    CHECK(fit_decay_order(l, m).exponent == Approx(0.0).margin(1e-12));

    m[3] = 0.0;
    CHECK_THROWS_AS(fit_decay_order(l, m), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay_order(geometric_grid(1, 100, 11), std::vector<double>(11, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay_order(geometric_grid(1, 50, 20), std::vector<double>(20, 1.0)), std::invalid_argument);
}

TEST_CASE("3D kernel amplitude orders at vertices and edges", "[asymptotics]") {
    const Vec3 x{{1.0, 0.2, -0.3}}, y_vertex{{0.8, -0.2, 0.25}}, y_edge{{0.9, 0.2, 0.3}};
    for (int k = 0; k <= 2; ++k) {
        const auto h = CutoffProfile::polynomial(k).one_sided(Side::Minus);
        const auto v = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, y_vertex, l)); });
        const auto e = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, y_edge, l)); });
        INFO("k=" << k);
        CHECK(v.exponent == Approx(2.0 - 2.0 * (k + 1)).margin(0.15));
        CHECK(e.exponent == Approx(2.0 - (k + 1)).margin(0.15));
    }
    const auto h = CutoffProfile::polynomial(1);
    const auto both = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, x, l)); });
    CHECK(both.exponent == Approx(2.0).margin(1e-6));
}

TEST_CASE("2D kernel amplitude has order -k", "[asymptotics]") {
    for (int k = 0; k <= 3; ++k) {
        const auto h = CutoffProfile::polynomial(k).one_sided(Side::Plus);
        const auto f = decay_sweep(
            [&](double l) { return std::abs(kernel_amplitude_2d(h, Vec2{{1.0, 0.4}}, Vec2{{1.3, -0.1}}, l)); });
        INFO("k=" << k);
        CHECK(f.exponent == Approx(-k).margin(0.1));
    }
}
