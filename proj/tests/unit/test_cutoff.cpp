#include <catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/Dense>

#include "srtl/cutoff.hpp"

using namespace srtl;
using Catch::Approx;

namespace {

// Derivative of order l at t0 from a one-sided polynomial fit through
// m samples t0 + j*step (independent of the jet arithmetic).
double fd_derivative(const CutoffProfile& p, double t0, double step, int l, int m) {
    Eigen::MatrixXd v(m, m);
    Eigen::VectorXd f(m);
    for (int j = 0; j < m; ++j) {
        const double s = j * step;
        for (int i = 0; i < m; ++i) v(j, i) = std::pow(s, i);
        f(j) = p(t0 + s);
    }
    const Eigen::VectorXd c = v.fullPivLu().solve(f);
    return c(l) * std::tgamma(l + 1.0);
}

}  // namespace

TEST_CASE("polynomial taper values", "[cutoff]") {
    CHECK(eval_cutoff(CutoffProfile::polynomial(0), 0.5, 0) == 1.0);
    CHECK(eval_cutoff(CutoffProfile::polynomial(1), 1.0, 1) == Approx(-2.0));
    CHECK(eval_cutoff(CutoffProfile::polynomial(2), 1.0, 2) == Approx(8.0));
    CHECK(eval_cutoff(CutoffProfile::polynomial(1), 0.5, 0) == Approx(0.75));
    CHECK(eval_cutoff(CutoffProfile::polynomial(2), 1.5, 0) == 0.0);
    CHECK_THROWS_AS(eval_cutoff(CutoffProfile::polynomial(1), 0.0, -1), std::invalid_argument);
}

TEST_CASE("jet derivatives match the expanded polynomial", "[cutoff]") {
    // (1 - t^2)^3 = 1 - 3t^2 + 3t^4 - t^6 on [-1, 1].
    const auto p = CutoffProfile::polynomial(3);
    const double t = 0.3;
    const double d[] = {
        1 - 3 * t * t + 3 * std::pow(t, 4) - std::pow(t, 6),
        -6 * t + 12 * std::pow(t, 3) - 6 * std::pow(t, 5),
        -6 + 36 * t * t - 30 * std::pow(t, 4),
        72 * t - 120 * std::pow(t, 3),
        72 - 360 * t * t,
        -720 * t,
        -720.0,
        0.0,
    };
    for (int l = 0; l < 8; ++l) CHECK(eval_cutoff(p, t, l) == Approx(d[l]).margin(1e-9));
}

TEST_CASE("shifted interval keeps midpoint normalization", "[cutoff]") {
    const auto p = CutoffProfile::polynomial(2, 0.5, 2.5);
    CHECK(eval_cutoff(p, 1.5, 0) == Approx(1.0));
    CHECK(eval_cutoff(p, 0.5, 0) == 0.0);
}

TEST_CASE("vanishing order is exact at both ends", "[cutoff]") {
    for (int k = 1; k <= 4; ++k) {
        for (auto p : {CutoffProfile::polynomial(k), CutoffProfile::plateau(k, 0.5)}) {
            for (double e : {p.c, p.d}) {
                for (int l = 0; l < k; ++l) CHECK(std::abs(eval_cutoff(p, e, l)) <= 1e-12);
                CHECK(std::abs(eval_cutoff(p, e, k)) >= 1e-3);
                // Finite-difference oracle, samples taken inside [c, d].
                const double step = e == p.c ? 0.01 : -0.01;
                const double dk = fd_derivative(p, e, step, k, 2 * k + 2);
                CHECK(std::abs(dk) >= 1e-3);
                for (int l = 0; l < k; ++l) CHECK(std::abs(fd_derivative(p, e, step, l, 2 * k + 2)) <= 1e-8 * std::abs(dk));
            }
        }
    }
}

TEST_CASE("plateau is exactly one in the middle", "[cutoff]") {
    const auto p = CutoffProfile::plateau(2, 0.4);
    for (double t : {-0.6, -0.3, 0.0, 0.45, 0.6}) CHECK(p(t) == 1.0);
    CHECK(p(-0.95) < 1.0);
    CHECK(p(-0.95) > 0.0);
    // Smooth join: high derivatives continuous across the plateau edge.
    const double j = -1.0 + 0.4 * 2.0 / 3.0;
    for (int l = 1; l <= 4; ++l) CHECK(eval_cutoff(p, j - 1e-6, l) == Approx(eval_cutoff(p, j + 1e-6, l)).margin(1e-3));
}

TEST_CASE("one-sided halves add up to the base profile", "[cutoff]") {
    for (auto base : {CutoffProfile::polynomial(2), CutoffProfile::plateau(1, 0.5)}) {
        const auto plus = base.one_sided(Side::Plus);
        const auto minus = base.one_sided(Side::Minus);
        for (int i = 0; i <= 400; ++i) {
            const double t = -1.0 + i / 200.0;
            CHECK(std::abs(plus(t) + minus(t) - base(t)) <= 1e-14);
        }
        CHECK(plus(-0.6) == 0.0);
        CHECK(minus(0.6) == 0.0);
        CHECK(plus.vanishes_near(-1.0, 0.1));
        CHECK_FALSE(plus.vanishes_near(1.0, 0.1));
        CHECK(minus.vanishes_near(1.0, 0.1));
        CHECK(plus.order_at_lo() == -1);
        CHECK(plus.order_at_hi() == base.k_hi);
        // The live end keeps the exact order.
        CHECK(std::abs(eval_cutoff(plus, 1.0, base.k_hi)) >= 1e-3);
        CHECK(eval_cutoff(plus, 1.0, base.k_hi) == Approx(eval_cutoff(base, 1.0, base.k_hi)));
    }
}

TEST_CASE("chi is C^(k-1) across the boundary", "[cutoff]") {
    // Outside [c,d] chi is 0; inside, derivatives below order k vanish at the end.
    for (int k = 1; k <= 3; ++k) {
        const auto p = CutoffProfile::polynomial(k);
        for (int l = 0; l < k; ++l) {
            const double inside = eval_cutoff(p, 1.0, l);
            const double outside = eval_cutoff(p, 1.0 + 1e-9, l);
            CHECK(std::abs(inside - outside) <= 1e-12);
        }
    }
}

TEST_CASE("chi in 2D and 3D", "[cutoff]") {
    const auto s2 = CutoffSpec<2>::uniform(CutoffProfile::polynomial(1), GammaSpec<2>::interval());
    CHECK(eval_chi(s2, Vec2{{0, 0.5}}) == Approx(0.75));
    CHECK(eval_chi(s2, Vec2{{0, 1.5}}) == 0.0);

    const auto g3 = GammaSpec<3>::rectangle(1, 1);
    const auto s3 = CutoffSpec<3>::uniform(CutoffProfile::polynomial(1), g3);
    CHECK(eval_chi(s3, Vec3{{0, 0, 0}}) == Approx(1.0));
    CHECK(eval_chi(s3, Vec3{{0, 1, 0}}) == 0.0);
    CHECK(eval_chi(s3, Vec3{{0, 0.5, -0.5}}) == Approx(0.75 * 0.75));

    // Distinct factors: h2 on [-a,a], h3 on [-b,b].
    auto s = CutoffSpec<3>::uniform(CutoffProfile::polynomial(1), GammaSpec<3>::rectangle(2, 1));
    s.h[1] = CutoffProfile::polynomial(2, -1, 1);
    CHECK(eval_chi(s, Vec3{{0, 1.0, 0.5}}) == Approx(0.75 * 0.75 * 0.75));
}
