#pragma once

// The acceptance battery: one function per criterion, each returning named
// checks against tolerances fixed below. Shared by the acceptance test
// binary and the `suite` subcommand.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srtl/analysis.hpp"
#include "srtl/asymptotics.hpp"
#include "srtl/loci.hpp"
#include "srtl/reconstruct.hpp"
#include "srtl/wavefront.hpp"

namespace srtl::acceptance {

namespace tol {
// 1: full-data inversion
constexpr double full_data_rel_l2 = 0.05;
constexpr double full_data_seconds_8_cores = 60.0;
// 2, 3: symbol orders
constexpr double lemma_exponent = 0.1;
constexpr double lemma_ratio = 0.02;
constexpr double lemma_seconds = 10.0;
constexpr double kernel3d_exponent = 0.15;
constexpr double kernel3d_seconds = 30.0;
// 4, 8: artifact geometry
constexpr double locus_fraction_2d = 0.90;
constexpr double locus_fraction_3d = 0.80;
constexpr double locus_cells = 2.0;
constexpr int cluster_min_size = 3;
constexpr double cluster_link_cells = 3.0;
// 5: artifact strength
constexpr double exponent_gap = 0.5;
// 6: principal symbol
constexpr double jump_ratio = 0.10;
constexpr int jump_points = 5;
// 7: wavefront calculus
constexpr double membership = 1e-9;
constexpr std::size_t composition_samples = 1000;
}  // namespace tol

struct Check {
    std::string what;
    double value = 0.0;
    std::string bound;
    bool pass = false;
};

struct Result {
    int id = 0;
    std::string title;
    std::string claim;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    double seconds = 0.0;

    bool pass() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

struct Context {
    std::uint64_t seed = 20240601;
};

inline std::string num(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

inline Check at_most(std::string what, double v, double bound) {
    return {std::move(what), v, "<= " + num(bound), v <= bound};
}
inline Check at_least(std::string what, double v, double bound) {
    return {std::move(what), v, ">= " + num(bound), v >= bound};
}

// One line: id, verdict, every check, wall time.
inline std::string summary_line(const Result& r) {
    std::ostringstream s;
    s << "criterion " << r.id << " " << (r.pass() ? "PASS" : "FAIL") << " | " << r.title << " |";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        s << (i ? ";" : "") << " " << c.what << " = " << num(c.value) << " (" << c.bound << ")"
          << (c.pass ? "" : " !");
    }
    s << " | " << num(r.seconds, 3) << " s";
    return s.str();
}

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// The disk experiment shared by criteria 4 and 5.
struct DiskSetup {
    Vec2 center{{1.2, 0.0}};
    double radius = 0.5;
    GammaSpec<2> gamma = GammaSpec<2>::interval();
    SinogramGeometry<2> sino_geo = SinogramGeometry<2>::make({512}, {1.0}, 1024, 4.0);
    ImageGeometry<2> image_geo = ImageGeometry<2>::box({{0.05, -1.5}}, {{2.6, 1.5}}, {{256, 256}});
    double bandwidth = 0.25;
    int nu_factor = 4;

    Phantom<2> phantom() const {
        Phantom<2> f;
        f.components.push_back(BallIndicator<2>{center, radius, 1.0});
        return f;
    }
    ReconstructOptions options() const {
        ReconstructOptions o;
        o.filter.nu_factor = nu_factor;
        o.filter.bandwidth = bandwidth;
        return o;
    }
};

// Residual peaks are searched outside the ball and its edge band, after a
// Gaussian high-pass that removes the slowly varying part of the residual.
constexpr double edge_band_cells = 6.0;
constexpr double highpass_cells = 3.0;
constexpr int border_cells = 3;

template <int N>
PeakOptions peak_options() {
    PeakOptions o;
    o.quantile = 0.99;
    o.highpass_sigma = highpass_cells;
    o.border = border_cells;
    return o;
}

// Single-linkage clusters of the given points; returns cluster sizes.
template <int N>
std::vector<int> cluster_sizes(const std::vector<Vec<N>>& pts, double link) {
    const std::size_t n = pts.size();
    std::vector<int> label(n, -1);
    std::vector<int> sizes;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] >= 0) continue;
        const int id = static_cast<int>(sizes.size());
        sizes.push_back(0);
        std::vector<std::size_t> stack{i};
        label[i] = id;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            ++sizes[id];
            for (std::size_t b = 0; b < n; ++b)
                if (label[b] < 0 && distance(pts[a], pts[b]) <= link) {
                    label[b] = id;
                    stack.push_back(b);
                }
        }
    }
    return sizes;
}

}  // namespace detail

// 1. Full-data inversion on a smooth phantom with a wide window.
inline Result criterion_1(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 1;
    r.title = "full-data inversion";
    r.claim = "filtered backprojection formula f = (x1/pi^n) R* P R f";
    const double L = 8.0;
    Phantom<2> f;
    f.components.push_back(GaussianBump<2>{{{1.5, 0.0}}, 0.2, 1.0});
    GammaSpec<2> g;
    g.half[0] = L;
    const auto spec = CutoffSpec<2>::uniform(CutoffProfile::polynomial(0), g);
    const auto geo = ImageGeometry<2>::box({{1.0, -0.5}}, {{2.0, 0.5}}, {{256, 256}});
    const auto sg = SinogramGeometry<2>::make({512}, {L}, 1024, 9.6);
    const auto rec = reconstruct_T(f, sg, spec, geo);
    const double err = relative_l2_error(rec.image, f, [](const Vec2&) { return true; });
    const double secs = sw.seconds();
    const int cores = std::min(8, thread_count());
    r.checks.push_back(at_most("relative L2 error", err, tol::full_data_rel_l2));
    r.checks.push_back(at_most("runtime s", secs, tol::full_data_seconds_8_cores * 8.0 / cores));
    r.notes.push_back("window [-8,8], 512 x 1024 samples, ROI [1,2]x[-0.5,0.5] at 256^2");
    r.notes.push_back("runtime bound scaled from 8 cores to " + std::to_string(cores));
    r.seconds = sw.seconds();
    return r;
}

// 2. Endpoint expansion of the one-dimensional oscillatory integral.
inline Result criterion_2(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 2;
    r.title = "oscillatory integral orders";
    r.claim = "|A(s,t,lambda)| ~ lambda^-(k+1) with the endpoint leading term";
    double worst_exp = 0.0, worst_ratio = 0.0;
    for (int k : {0, 1, 2}) {
        const auto h = CutoffProfile::polynomial(k).one_sided(Side::Minus);
        for (double st : {0.3, 0.7}) {
            const double s = 0.5 * st, t = -0.5 * st;
            const auto fit = decay_sweep([&](double l) { return std::abs(oscillatory_A(h, s, t, l)); });
            const double lam = 1e4;
            const cplx ratio = oscillatory_A(h, s, t, lam) /
                                (endpoint_phase(h, Endpoint::C, s, t, lam) * leading_term(h, Endpoint::C, s, t, lam));
            worst_exp = std::max(worst_exp, std::abs(fit.exponent + (k + 1)));
            worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
            r.notes.push_back("k=" + std::to_string(k) + " s-t=" + num(st) + " exponent " + num(fit.exponent, 6) +
                              " ratio@1e4 " + num(std::abs(ratio), 6));
        }
    }
    r.checks.push_back(at_most("max |exponent + (k+1)|", worst_exp, tol::lemma_exponent));
    r.checks.push_back(at_most("max |A/leading - 1| at 1e4", worst_ratio, tol::lemma_ratio));
    r.checks.push_back(at_most("runtime s", sw.seconds(), tol::lemma_seconds));
    r.seconds = sw.seconds();
    return r;
}

// 3. Factorized 3D kernel at vertex and edge configurations.
inline Result criterion_3(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 3;
    r.title = "3D kernel orders";
    r.claim = "vertex kernel order 2-2(k+1), edge kernel order 2-(k+1)";
    const Vec3 x{{1.0, 0.2, -0.3}};
    const Vec3 y_vertex{{0.8, -0.2, 0.25}};  // both lateral coordinates differ
    const Vec3 y_edge{{0.9, 0.2, 0.3}};      // x2 = y2: one factor has no phase
    double worst_v = 0.0, worst_e = 0.0;
    for (int k : {0, 1, 2}) {
        const auto h = CutoffProfile::polynomial(k).one_sided(Side::Minus);
        const auto v = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, y_vertex, l)); });
        const auto e = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, y_edge, l)); });
        worst_v = std::max(worst_v, std::abs(v.exponent - (2 - 2 * (k + 1))));
        worst_e = std::max(worst_e, std::abs(e.exponent - (2 - (k + 1))));
        r.notes.push_back("k=" + std::to_string(k) + " vertex " + num(v.exponent, 6) + " edge " + num(e.exponent, 6));
    }
    r.checks.push_back(at_most("max vertex order error", worst_v, tol::kernel3d_exponent));
    r.checks.push_back(at_most("max edge order error", worst_e, tol::kernel3d_exponent));
    r.checks.push_back(at_most("runtime s", sw.seconds(), tol::kernel3d_seconds));
    r.seconds = sw.seconds();
    return r;
}

// 4. Residual peaks of the k = 0 disk reconstruction lie on the circles
// about the endpoints.
inline Result criterion_4(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 4;
    r.title = "2D artifact geometry";
    r.claim = "artifacts lie on rotations of the boundary covectors about z+ and z-";
    const detail::DiskSetup d;
    const auto f = d.phantom();
    const auto spec = CutoffSpec<2>::uniform(CutoffProfile::polynomial(0), d.gamma);
    const auto rec = reconstruct_T(forward(f, d.sino_geo), spec, d.image_geo, d.options());
    const auto ref = rasterize(f, d.image_geo);
    const double dx = d.image_geo.spacing[0];
    auto keep = [&](const Vec2& x) { return distance(x, d.center) - d.radius > detail::edge_band_cells * dx; };
    const auto peaks = artifact_peaks(rec.image, ref, detail::peak_options<2>(), keep);
    const BallLoci<2> loci(f, d.gamma);
    std::vector<Vec2> pts, off;
    for (const auto& p : peaks) {
        pts.push_back(p.point);
        if (loci.distance(p.point) > tol::locus_cells * dx) off.push_back(p.point);
    }
    const auto m = locus_match<2>(pts, [&](const Vec2& x) { return loci.distance(x); }, dx);
    int clusters = 0;
    for (int s : detail::cluster_sizes(off, tol::cluster_link_cells * dx)) clusters += s >= tol::cluster_min_size;
    r.checks.push_back(at_least("peaks within 2 cells", m.within2, tol::locus_fraction_2d));
    r.checks.push_back(at_most("off-locus clusters", clusters, 0));
    r.notes.push_back(std::to_string(peaks.size()) + " peaks, p95 distance " + num(m.p95) + " cells");
    r.seconds = sw.seconds();
    return r;
}

// 5. Exponent gap between the visible edge and the artifact, and artifact
// amplitude, for k = 0, 1, 2.
inline Result criterion_5(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 5;
    r.title = "2D artifact strength";
    r.claim = "artifacts are k orders smoother than the reconstructed edge";
    const detail::DiskSetup d;
    const auto f = d.phantom();
    const auto sino = forward(f, d.sino_geo);
    const auto ref = rasterize(f, d.image_geo);
    const double dx = d.image_geo.spacing[0];
    const BallLoci<2> loci(f, d.gamma);
    const Vec2 zp{{0.0, 1.0}};
    const double inner = distance(d.center, zp) - d.radius;

    std::vector<double> amp;
    for (int k : {0, 1, 2}) {
        const auto spec = CutoffSpec<2>::uniform(CutoffProfile::polynomial(k), d.gamma);
        const auto rec = reconstruct_T(sino, spec, d.image_geo, d.options());
        RegularityProbe<2> vis;
        vis.point = d.center - Vec2{{d.radius, 0.0}};
        vis.direction = Vec2{{1.0, 0.0}};
        const double e_vis = local_regularity_exponent(rec.image, vis).exponent;
        std::vector<double> gaps;
        for (int deg = -30; deg <= 15; deg += 5) {
            const double a = deg * std::numbers::pi / 180.0;
            RegularityProbe<2> p;
            p.direction = Vec2{{std::cos(a), std::sin(a)}};
            p.point = zp + inner * p.direction;
            p.require_isolated = false;  // for k >= 1 the artifact is a kink or smoother
            gaps.push_back(e_vis - local_regularity_exponent(rec.image, p).exponent);
        }
        const double g = detail::median(gaps);
        r.checks.push_back(at_most("k=" + std::to_string(k) + " |median gap - k|", std::abs(g - k), tol::exponent_gap));
        r.notes.push_back("k=" + std::to_string(k) + " visible exponent " + num(e_vis) + ", median gap " + num(g) +
                          " over " + std::to_string(gaps.size()) + " probes");
        double a = 0.0;
        for (std::size_t i = 0; i < d.image_geo.size(); ++i) {
            const Vec2 x = d.image_geo.point(i);
            if (distance(x, d.center) - d.radius <= detail::edge_band_cells * dx) continue;
            if (loci.distance(x) <= tol::locus_cells * dx) a = std::max(a, std::abs(rec.image[i] - ref[i]));
        }
        amp.push_back(a);
    }
    const bool decreasing = amp[0] > amp[1] && amp[1] > amp[2];
    r.checks.push_back({"amplitude decreasing in k", decreasing ? 1.0 : 0.0, "== 1", decreasing});
    r.notes.push_back("peak artifact amplitude k=0,1,2: " + num(amp[0]) + ", " + num(amp[1]) + ", " + num(amp[2]));
    r.seconds = sw.seconds();
    return r;
}

// 6. Jump of the reconstructed visible edge equals chi(z) times the true
// jump.
inline Result criterion_6(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 6;
    r.title = "principal symbol";
    r.claim = "principal symbol on the visible set is chi(z)";
    const Vec2 c{{1.2, 0.0}};
    const double rho = 0.5, dx = 0.00125;
    Phantom<2> f;
    f.components.push_back(BallIndicator<2>{c, rho, 1.0});
    const auto gamma = GammaSpec<2>::interval();
    const auto spec = CutoffSpec<2>::uniform(CutoffProfile::polynomial(1), gamma);
    const auto sg = SinogramGeometry<2>::make({4096}, {1.0}, 8192, 4.0);

    // Probe points where the normal line meets z2 = tau, chi = 1 - tau^2.
    struct Probe {
        Vec2 point, normal;
        double chi;
    };
    std::vector<Probe> probes;
    std::vector<ImageGeometry<2>> patches;
    for (int side : {-1, 1})
        for (double tau : {0.0, 0.5, std::sqrt(0.5)}) {
            const Vec2 z{{0.0, tau}};
            const Vec2 n = normalized(c - z);
            const Vec2 y = c + (side * rho) * n;
            // Outward normal of the disk at y.
            probes.push_back({y, side * n, eval_chi(spec, z)});
            const double h = 32 * dx;
            patches.push_back(ImageGeometry<2>::box({{y[0] - h, y[1] - h}}, {{y[0] + h, y[1] + h}}, {{65, 65}}));
        }
    ReconstructOptions opt;
    opt.filter.nu_factor = 4;
    const double du = sg.t_max * sg.t_max / (srtl::detail::next_pow2(4L * sg.nt) - 1);
    opt.filter.bandwidth = std::min(1.0, du / (4.0 * sg.dz(0)));
    const auto recs = reconstruct_T(forward(f, sg), spec, patches, opt);
    int good = 0;
    std::vector<bool> level_ok(3, false);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto e = measure_edge_jump(recs[i].image, probes[i].point, probes[i].normal, 12.0);
        // The indicator drops by 1 across the outward normal.
        const double ratio = -e.jump / probes[i].chi;
        const bool ok = std::abs(ratio - 1.0) <= tol::jump_ratio;
        good += ok;
        if (ok) level_ok[i % 3] = true;
        r.notes.push_back("chi=" + num(probes[i].chi) + " measured/predicted " + num(ratio));
    }
    const int levels = static_cast<int>(std::count(level_ok.begin(), level_ok.end(), true));
    r.checks.push_back(at_least("points within 10%", good, tol::jump_points));
    r.checks.push_back(at_least("chi levels matched", levels, 3));
    r.seconds = sw.seconds();
    return r;
}

// 7. Sampled compositions of the canonical relations and the order
// bookkeeping.
inline Result criterion_7(const Context& ctx) {
    detail::Stopwatch sw;
    Result r;
    r.id = 7;
    r.title = "wavefront calculus";
    r.claim = "C_R^t C_R in the visible diagonal, C_R^t C_A in the artifact rotations";
    std::mt19937_64 rng(ctx.seed);
    auto frac = [](std::size_t good, std::size_t n) { return n ? static_cast<double>(good) / n : 0.0; };
    auto run = [&](auto gamma, auto sampler, int right_n, int distract_n, auto pred, const std::string& name) {
        const auto right = sampler(gamma, rng, right_n);
        const auto out = compose_sampled(cr_transpose_over(right, gamma, rng, distract_n), right, tol::membership);
        std::size_t good = 0;
        for (const auto& p : out.pairs) good += pred(p, gamma);
        r.checks.push_back(at_least(name + " samples", static_cast<double>(out.pairs.size()),
                                    static_cast<double>(tol::composition_samples)));
        r.checks.push_back(at_least(name + " inside", frac(good, out.pairs.size()), 1.0));
    };
    const RelationTag delta{RelationKind::DeltaV, 0};
    auto in_delta = [&](const auto& p, const auto& g) { return relation_membership(delta, p, g, tol::membership); };
    auto in_rot = [&](const auto& p, const auto& g) { return in_artifact_relation(p, g, tol::membership); };
    const auto g2 = GammaSpec<2>::interval();
    const auto g3 = GammaSpec<3>::rectangle(1.0, 1.0);
    run(g2, [](const auto& g, auto& rg, int n) { return sample_cr(g, rg, n); }, 1500, 1500, in_delta, "2D CR");
    run(g2, [](const auto& g, auto& rg, int n) { return sample_ca(g, rg, n); }, 2500, 1500, in_rot, "2D CA");
    run(g3, [](const auto& g, auto& rg, int n) { return sample_cr(g, rg, n); }, 1200, 800, in_delta, "3D CR");
    run(g3, [](const auto& g, auto& rg, int n) { return sample_ca(g, rg, n); }, 2500, 800, in_rot, "3D CA");

    int bad = 0;
    for (int k = 0; k <= 5; ++k) {
        bad += !(sobolev_shift(ZoneKind::Boundary, k, 2) == HalfOrder::whole(-k));
        bad += !(sobolev_shift(ZoneKind::Corner, k, 3) == HalfOrder::whole(-2 * k));
        bad += !(sobolev_shift(ZoneKind::Edge, k, 3) == HalfOrder::whole(-k));
        for (auto z : {ZoneKind::Boundary, ZoneKind::Corner, ZoneKind::Edge}) {
            const int dim = z == ZoneKind::Boundary ? 2 : 3;
            bad += -sobolev_shift(z, k, dim).twice / 2 != tabulated_orders_smoother(z, k);
        }
    }
    r.checks.push_back(at_most("order identity failures", bad, 0));
    r.seconds = sw.seconds();
    return r;
}

// 8. Reduced-scale 3D ball: residual peaks on the vertex spheres and edge
// surfaces, and vertex artifacts weaken faster in k than edge artifacts.
inline Result criterion_8(const Context&) {
    detail::Stopwatch sw;
    Result r;
    r.id = 8;
    r.title = "3D artifact geometry";
    r.claim = "vertex artifacts 2k orders and edge artifacts k orders smoother";
    const Vec3 c{{1.0, 0.3, 0.2}};
    const double rho = 0.4;
    Phantom<3> f;
    f.components.push_back(BallIndicator<3>{c, rho, 1.0});
    const auto gamma = GammaSpec<3>::rectangle(1.0, 1.0);
    const auto sg = SinogramGeometry<3>::make({128, 128}, {1.0, 1.0}, 1024, 4.2);
    const auto geo = ImageGeometry<3>::box({{0.05, -1.2, -1.2}}, {{2.45, 1.2, 1.2}}, {{96, 96, 96}});
    const double dx = geo.spacing[0];
    const auto sino = forward(f, sg);
    const auto ref = rasterize(f, geo);
    const BallLoci<3> loci(f, gamma);
    auto keep = [&](const Vec3& x) { return distance(x, c) - rho > detail::edge_band_cells * dx; };

    // Cells on one locus family and clear of the other.
    std::vector<std::size_t> vertex_cells, edge_cells;
    for (std::size_t i = 0; i < geo.size(); ++i) {
        const Vec3 x = geo.point(i);
        if (!keep(x)) continue;
        const double dv = loci.point_distance(x) / dx, de = loci.edge_distance(x) / dx;
        if (dv <= 1.0 && de > 2.5) vertex_cells.push_back(i);
        if (de <= 1.0 && dv > 2.5) edge_cells.push_back(i);
    }

    double vamp[2], eamp[2];
    for (int k : {0, 1}) {
        const auto spec = CutoffSpec<3>::uniform(CutoffProfile::polynomial(k), gamma);
        ReconstructOptions opt;
        opt.matched_bandwidth = true;
        const auto rec = reconstruct_T(sino, spec, geo, opt);
        const auto peaks = artifact_peaks(rec.image, ref, detail::peak_options<3>(), keep);
        std::vector<Vec3> pts;
        for (const auto& p : peaks) pts.push_back(p.point);
        const auto m = locus_match<3>(pts, [&](const Vec3& x) { return loci.distance(x); }, dx);
        r.checks.push_back(at_least("k=" + std::to_string(k) + " peaks within 2 cells", m.within2,
                                    tol::locus_fraction_3d));
        r.notes.push_back("k=" + std::to_string(k) + ": " + std::to_string(peaks.size()) + " peaks, bandwidth " +
                          rec.meta.at("bandwidth"));

        ImageGrid<3> res(geo);
        for (std::size_t i = 0; i < geo.size(); ++i) res[i] = rec.image[i] - ref[i];
        const auto hp = highpass(res, detail::highpass_cells);
        vamp[k] = eamp[k] = 0.0;
        for (auto i : vertex_cells) vamp[k] = std::max(vamp[k], std::abs(hp[i]));
        for (auto i : edge_cells) eamp[k] = std::max(eamp[k], std::abs(hp[i]));
    }
    const double vr = vamp[1] / vamp[0], er = eamp[1] / eamp[0];
    r.checks.push_back({"vertex ratio - edge ratio", vr - er, "< 0", vr < er});
    r.notes.push_back("amplitude ratio k=1/k=0: vertex " + num(vr) + ", edge " + num(er) + " (" +
                      std::to_string(vertex_cells.size()) + " vertex cells, " + std::to_string(edge_cells.size()) +
                      " edge cells)");
    r.seconds = sw.seconds();
    return r;
}

inline constexpr int criterion_count = 8;

inline Result run_criterion(int id, const Context& ctx = {}) {
    static const std::function<Result(const Context&)> table[] = {criterion_1, criterion_2, criterion_3,
                                                                  criterion_4, criterion_5, criterion_6,
                                                                  criterion_7, criterion_8};
    if (id < 1 || id > criterion_count) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    return table[id - 1](ctx);
}

}  // namespace srtl::acceptance
