#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "srtl/cutoff.hpp"
#include "srtl/filter.hpp"
#include "srtl/geometry.hpp"
#include "srtl/grid.hpp"
#include "srtl/interp.hpp"
#include "srtl/parallel.hpp"
#include "srtl/phantom.hpp"
#include "srtl/transform.hpp"

namespace srtl {

struct ReconstructOptions {
    FilterOptions filter;
    // When set, the filter band is narrowed so the filtered data stays
    // resolved by the detector spacing over the whole image (see
    // matched_bandwidth); filter.bandwidth is then ignored.
    bool matched_bandwidth = false;
    double matched_scale = 1.0;
};

using Metadata = std::map<std::string, std::string>;

template <int N>
struct Reconstruction {
    ImageGrid<N> image;
    Metadata meta;
};

// Largest u-bandwidth fraction for which the backprojection integrand
// g(z, |x - z|) is sampled at or above Nyquist in z: the phase
// W |x - z|^2 changes at rate 2 W |x' - z'| along the detector.
template <int N>
double matched_bandwidth(const SinogramGeometry<N>& sg, const ImageGeometry<N>& geo, const CutoffSpec<N>& spec,
                         double du) {
    double reach = 0.0, dz = 0.0;
    const Vec<N> lo = geo.lo, hi = geo.hi();
    for (int i = 0; i < N - 1; ++i) {
        // Detectors that matter are the ones where chi is nonzero.
        const double zlo = std::max(-sg.half_window[i], spec.h[i].c);
        const double zhi = std::min(sg.half_window[i], spec.h[i].d);
        reach = std::max({reach, std::abs(hi[i + 1] - zlo), std::abs(zhi - lo[i + 1])});
        dz = std::max(dz, sg.dz(i));
    }
    return std::min(1.0, du / (2.0 * reach * dz));
}

// T on several image regions sharing one filtered sinogram. With
// matched_bandwidth the band is matched to the first region.
template <int N>
std::vector<Reconstruction<N>> reconstruct_T(const SinogramGrid<N>& sino, const CutoffSpec<N>& spec,
                                             const std::vector<ImageGeometry<N>>& geos,
                                             const ReconstructOptions& opt = {}) {
    if (geos.empty()) throw std::invalid_argument("no image regions given");
    FilterOptions fo = opt.filter;
    if (opt.matched_bandwidth) {
        const FilterPlan probe(N, sino.geo.nt, sino.geo.t_max, FilterOptions{fo.pad, fo.nu_factor, 1.0, false});
        fo.bandwidth = std::min(1.0, opt.matched_scale * matched_bandwidth(sino.geo, geos.front(), spec, probe.du()));
    }
    const FilterPlan plan(N, sino.geo.nt, sino.geo.t_max, fo);
    const auto filtered = filter_sinogram(apply_chi_mask(sino, spec), plan);

    Metadata meta;
    meta["dim"] = std::to_string(N);
    meta["k"] = std::to_string(spec.k());
    meta["profile"] = spec.h[0].family_name();
    std::string window;
    for (int i = 0; i < N - 1; ++i)
        window += (i ? "x" : "") + std::string("[") + std::to_string(-sino.geo.half_window[i]) + "," +
                  std::to_string(sino.geo.half_window[i]) + "]";
    meta["window"] = window;
    meta["bandwidth"] = std::to_string(fo.bandwidth);
    meta["nu"] = std::to_string(plan.nu());
    meta["pad"] = std::to_string(fo.pad);

    std::vector<Reconstruction<N>> out;
    const double c = 1.0 / std::pow(std::numbers::pi, N);
    for (const auto& geo : geos) {
        Reconstruction<N> r;
        r.image = backproject(filtered, geo);
        for (std::size_t i = 0; i < geo.size(); ++i) r.image[i] *= geo.point(i)[0] * c;
        r.meta = meta;
        out.push_back(std::move(r));
    }
    return out;
}

template <int N>
Reconstruction<N> reconstruct_T(const SinogramGrid<N>& sino, const CutoffSpec<N>& spec, const ImageGeometry<N>& geo,
                                const ReconstructOptions& opt = {}) {
    return std::move(reconstruct_T(sino, spec, std::vector<ImageGeometry<N>>{geo}, opt).front());
}

template <int N>
Reconstruction<N> reconstruct_T(const Phantom<N>& f, const SinogramGeometry<N>& sg, const CutoffSpec<N>& spec,
                                const ImageGeometry<N>& geo, const ReconstructOptions& opt = {}) {
    return reconstruct_T(forward(f, sg), spec, geo, opt);
}

// Fit of a + b s + J Phi((s - s0) / w) to the profile across an edge.
struct EdgeJump {
    double jump = 0.0;
    double offset = 0.0;  // s0, in cells
    double width = 0.0;   // w, in cells
    double rms = 0.0;
};

namespace detail {

inline double normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

// Least squares for (a, b, J) with the basis (1, s, Phi).
inline bool fit_affine_step(const std::vector<double>& s, const std::vector<double>& y, double s0, double w, double& a,
                            double& b, double& J, double& sse) {
    double m[3][3] = {}, v[3] = {};
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double phi[3] = {1.0, s[i], normal_cdf((s[i] - s0) / w)};
        for (int r = 0; r < 3; ++r) {
            v[r] += phi[r] * y[i];
            for (int c = 0; c < 3; ++c) m[r][c] += phi[r] * phi[c];
        }
    }
    // Cramer's rule on the 3x3 normal equations.
    auto det3 = [](const double q[3][3]) {
        return q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1]) - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0]) +
               q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
    };
    const double d = det3(m);
    if (std::abs(d) < 1e-300) return false;
    double sol[3];
    for (int k = 0; k < 3; ++k) {
        double q[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) q[r][c] = c == k ? v[r] : m[r][c];
        sol[k] = det3(q) / d;
    }
    a = sol[0];
    b = sol[1];
    J = sol[2];
    sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (a + b * s[i] + J * normal_cdf((s[i] - s0) / w));
        sse += e * e;
    }
    return true;
}

}  // namespace detail

// Jump of the image across an edge at `point` along the unit `normal`,
// measured on a profile of +-half_width cells (in units of the smallest
// spacing). Positive when the image increases along the normal.
template <int N>
EdgeJump measure_edge_jump(const ImageGrid<N>& img, const Vec<N>& point, const Vec<N>& normal, double half_width = 6.0) {
    double cell = img.geo.spacing[0];
    for (int i = 1; i < N; ++i) cell = std::min(cell, img.geo.spacing[i]);
    const Vec<N> n = normalized(normal);
    std::vector<double> s, y;
    for (double q = -half_width; q <= half_width + 1e-9; q += 0.25) {
        const Vec<N> x = point + (q * cell) * n;
        if (!stencil_inside(img.geo, x)) throw std::invalid_argument("edge profile leaves the image");
        s.push_back(q);
        y.push_back(interpolate(img, x));
    }
    EdgeJump best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (double s0 = -2.0; s0 <= 2.0 + 1e-9; s0 += 0.05)
        for (double w = 0.2; w <= 3.0 + 1e-9; w += 0.05) {
            double a, b, J, sse;
            if (!detail::fit_affine_step(s, y, s0, w, a, b, J, sse)) continue;
            if (sse < best_sse) {
                best_sse = sse;
                best = {J, s0, w, 0.0};
            }
        }
    best.rms = std::sqrt(best_sse / s.size());
    return best;
}

// Predicted attenuation of a jump singularity of the phantom.
template <int N>
struct EdgeRecord {
    Vec<N> point;
    Vec<N> normal;  // outward unit normal
    Zone zone;
    double chi = 0.0;        // chi at the line's detector point (visible only)
    double predicted = 0.0;  // chi for visible, 0 for invisible, NaN on the boundary strata
    double true_jump = 0.0;  // jump of f along the normal
    double measured = std::numeric_limits<double>::quiet_NaN();
};

// Per-edge predicted jump ratios at boundary points of the ball components.
// Only ball indicators carry singularities; overlapping balls would create
// corners with no single normal and are rejected.
template <int N>
std::vector<EdgeRecord<N>> visible_reference(const Phantom<N>& f, const CutoffSpec<N>& spec, const GammaSpec<N>& gamma,
                                             int samples_per_ball, double tol = 1e-9) {
    std::vector<const BallIndicator<N>*> balls;
    for (const auto& c : f.components)
        if (const auto* b = std::get_if<BallIndicator<N>>(&c)) balls.push_back(b);
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            const double d = distance(balls[i]->center, balls[j]->center);
            if (d < balls[i]->radius + balls[j]->radius && d > std::abs(balls[i]->radius - balls[j]->radius))
                throw std::invalid_argument("intersecting ball boundaries have no known normal at the crossing");
        }
    std::vector<EdgeRecord<N>> out;
    const double pi = std::numbers::pi;
    for (const auto* b : balls) {
        for (int i = 0; i < samples_per_ball; ++i) {
            Vec<N> nrm;
            if constexpr (N == 2) {
                const double a = 2 * pi * (i + 0.5) / samples_per_ball;
                nrm = Vec<2>{{std::cos(a), std::sin(a)}};
            } else {
                const double u = 1.0 - 2.0 * (i + 0.5) / samples_per_ball;
                const double s = std::sqrt(1.0 - u * u), th = pi * (3.0 - std::sqrt(5.0)) * i;
                nrm = Vec<3>{{u, s * std::cos(th), s * std::sin(th)}};
            }
            EdgeRecord<N> r;
            r.point = b->center + b->radius * nrm;
            r.normal = nrm;
            r.true_jump = -b->amplitude;
            r.zone = classify_covector(Covector<N>{r.point, nrm}, gamma, tol);
            if (r.zone.kind == ZoneKind::Visible) {
                r.chi = eval_chi(spec, *line_plane_intersection(Covector<N>{r.point, nrm}));
                r.predicted = r.chi;
            } else if (r.zone.kind == ZoneKind::Invisible) {
                r.predicted = 0.0;
            } else {
                r.predicted = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(r);
        }
    }
    return out;
}

// Relative L2 error of img against f over points where mask is true.
template <int N, class Mask>
double relative_l2_error(const ImageGrid<N>& img, const Phantom<N>& f, Mask&& keep) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < img.geo.size(); ++i) {
        const Vec<N> x = img.geo.point(i);
        if (!keep(x)) continue;
        const double ref = f.value(x);
        num += (img[i] - ref) * (img[i] - ref);
        den += ref * ref;
    }
    if (den == 0.0) throw std::invalid_argument("reference vanishes on the region");
    return std::sqrt(num / den);
}

}  // namespace srtl
