#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "srtl/cutoff.hpp"
#include "srtl/geometry.hpp"
#include "srtl/vec.hpp"

namespace srtl {

enum class RelationKind { DeltaV, LambdaPlus, LambdaMinus, LambdaVertex, LambdaEdge, CR, CA };

struct RelationTag {
    RelationKind kind = RelationKind::DeltaV;
    int index = 0;  // vertex 1..4 or edge 5..8

    std::string name() const {
        switch (kind) {
            case RelationKind::DeltaV: return "DeltaV";
            case RelationKind::LambdaPlus: return "Lambda+";
            case RelationKind::LambdaMinus: return "Lambda-";
            case RelationKind::LambdaVertex:
            case RelationKind::LambdaEdge: return "Lambda" + std::to_string(index);
            case RelationKind::CR: return "C_R";
            case RelationKind::CA: return "C_A";
        }
        return "?";
    }
};

// Covector on the data side: position (z', r), dual variables (zeta, rho).
template <int N>
struct DataCovector {
    Vec<N> p;    // (z2, [z3,] r)
    Vec<N> dir;  // (zeta2, [zeta3,] rho)

    double r() const { return p[N - 1]; }
    double rho() const { return dir[N - 1]; }
    // Detector point on the plane x1 = 0.
    Vec<N> z() const {
        Vec<N> z{};
        for (int i = 1; i < N; ++i) z[i] = p[i - 1];
        return z;
    }
};

template <int N> inline const Vec<N>& position(const Covector<N>& c) { return c.x; }
template <int N> inline const Vec<N>& direction(const Covector<N>& c) { return c.xi; }
template <int N> inline const Vec<N>& position(const DataCovector<N>& c) { return c.p; }
template <int N> inline const Vec<N>& direction(const DataCovector<N>& c) { return c.dir; }

template <class L, class R>
struct Pair {
    L left;
    R right;
};

template <int N> using CovectorPair = Pair<Covector<N>, Covector<N>>;
template <int N> using DataPair = Pair<DataCovector<N>, Covector<N>>;

template <class L, class R>
struct RelationSample {
    std::vector<Pair<L, R>> pairs;
    double tol = 1e-9;
};

namespace detail {

inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

template <int N>
bool vec_close(const Vec<N>& a, const Vec<N>& b, double tol) {
    return norm(a - b) <= tol * std::max({1.0, norm(a), norm(b)});
}

// xi = tau (x - c), eta = tau (y - c), |x - c| = |y - c|, shared tau.
template <int N>
bool rotation_pair(const CovectorPair<N>& pr, const Vec<N>& c, double tol) {
    const auto& [a, b] = pr;
    if (!a.valid() || !b.valid()) return false;
    const Vec<N> rx = a.x - c, ry = b.x - c;
    const double nx = norm(rx), ny = norm(ry);
    if (nx == 0.0 || ny == 0.0) return false;
    const double tx = dot(a.xi, rx) / (nx * nx);
    const double ty = dot(b.xi, ry) / (ny * ny);
    if (tx == 0.0 || ty == 0.0) return false;
    if (norm(a.xi - tx * rx) > tol * norm(a.xi)) return false;
    if (norm(b.xi - ty * ry) > tol * norm(b.xi)) return false;
    return close(tx, ty, tol) && close(nx, ny, tol);
}

}  // namespace detail

// Predicate for the image-side relations (DeltaV and the rotations).
template <int N>
bool relation_membership(const RelationTag& tag, const CovectorPair<N>& pr, const GammaSpec<N>& gamma,
                         double tol) {
    const auto& [a, b] = pr;
    switch (tag.kind) {
        case RelationKind::DeltaV:
            return a.valid() && detail::vec_close(a.x, b.x, tol) && detail::vec_close(a.xi, b.xi, tol) &&
                   classify_covector(a, gamma, tol).kind != ZoneKind::Invisible;
        case RelationKind::LambdaPlus:
        case RelationKind::LambdaMinus:
            if constexpr (N == 2) {
                const int sign = tag.kind == RelationKind::LambdaPlus ? 1 : -1;
                return detail::rotation_pair(pr, gamma.endpoint(sign), tol);
            }
            return false;
        case RelationKind::LambdaVertex:
            if constexpr (N == 3) return detail::rotation_pair(pr, gamma.vertex(tag.index), tol);
            return false;
        case RelationKind::LambdaEdge:
            if constexpr (N == 3) {
                if (tag.index < 5 || tag.index > 8) return false;
                const int frozen = tag.index <= 6 ? 1 : 2;
                const int moving = 3 - frozen;
                if (!a.valid() || a.xi[0] == 0.0) return false;
                if (!detail::close(a.x[frozen], b.x[frozen], tol)) return false;
                // Where the line of (x, xi) meets the plane; must sit on the edge segment.
                Vec<3> c = a.x - (a.x[0] / a.xi[0]) * a.xi;
                c[0] = 0.0;
                const double fixed = tag.index == 5 ? gamma.half[1]
                                   : tag.index == 6 ? -gamma.half[1]
                                   : tag.index == 7 ? -gamma.half[0]
                                                    : gamma.half[0];
                if (!detail::close(c[moving], fixed, tol)) return false;
                if (std::abs(c[frozen]) > gamma.half[frozen - 1] + tol) return false;
                c[moving] = fixed;
                return detail::rotation_pair(pr, c, tol);
            }
            return false;
        default: return false;
    }
}

// Membership in the union of the artifact rotations: Lambda_+ and
// Lambda_- in 2D, the vertex and edge rotations in 3D.
template <int N>
bool in_artifact_relation(const CovectorPair<N>& pr, const GammaSpec<N>& gamma, double tol) {
    if constexpr (N == 2) {
        return relation_membership(RelationTag{RelationKind::LambdaPlus, 0}, pr, gamma, tol) ||
               relation_membership(RelationTag{RelationKind::LambdaMinus, 0}, pr, gamma, tol);
    } else {
        for (int j = 1; j <= 4; ++j)
            if (relation_membership(RelationTag{RelationKind::LambdaVertex, j}, pr, gamma, tol)) return true;
        for (int j = 5; j <= 8; ++j)
            if (relation_membership(RelationTag{RelationKind::LambdaEdge, j}, pr, gamma, tol)) return true;
        return false;
    }
}

// Predicate for the data-to-image relations. C_R is restricted to
// detector points in the closed set Gamma; C_A lives over its boundary
// strata and carries the extra conormal term tau' != 0.
template <int N>
bool relation_membership(const RelationTag& tag, const DataPair<N>& pr, const GammaSpec<N>& gamma, double tol) {
    const auto& [b, c] = pr;
    if (!c.valid() || !(b.r() > 0.0)) return false;
    const Vec<N> z = b.z();
    if (!detail::close(distance(c.x, z), b.r(), tol)) return false;
    const double tau = -b.rho() / b.r();
    if (tau == 0.0) return false;
    if (!detail::vec_close(c.xi, tau * (c.x - z), tol)) return false;
    // Perturbation of zeta away from the pure C_R value.
    Vec<N> delta{};
    double scale = 0.0;
    for (int i = 0; i < N - 1; ++i) {
        const double pure = tau * (z[i + 1] - c.x[i + 1]);
        delta[i] = b.dir[i] - pure;
        scale = std::max({scale, std::abs(pure), std::abs(b.dir[i])});
    }
    const double slack = tol * std::max(1.0, scale);
    const Zone zone = detail::classify_point(z, gamma, tol);
    if (tag.kind == RelationKind::CR) return zone.kind != ZoneKind::Invisible && norm(delta) <= slack;
    if (tag.kind != RelationKind::CA) return false;
    if (norm(delta) <= slack) return false;
    if constexpr (N == 2) {
        return zone.kind == ZoneKind::Boundary;
    } else {
        if (zone.kind == ZoneKind::Corner) return true;
        if (zone.kind != ZoneKind::Edge) return false;
        // Conormal to the edge: only the coordinate normal to it may move.
        const int along = zone.index <= 6 ? 0 : 1;
        return std::abs(delta[along]) <= slack;
    }
}

template <class L, class R>
RelationSample<R, L> transpose(const RelationSample<L, R>& s) {
    RelationSample<R, L> t;
    t.tol = s.tol;
    t.pairs.reserve(s.pairs.size());
    for (const auto& p : s.pairs) t.pairs.push_back({p.right, p.left});
    return t;
}

// Sampled composition: (a ; c) whenever some left (a ; b) and right (b' ; c)
// share the middle covector up to tol in position and normalized direction.
// Relations are conic, so the left pair is rescaled to |b'| before output.
template <class L, class M, class R>
RelationSample<L, R> compose_sampled(const RelationSample<L, M>& left, const RelationSample<M, R>& right,
                                     double tol) {
    RelationSample<L, R> out;
    out.tol = tol;
    if (left.pairs.empty() || right.pairs.empty()) return out;

    // Sort right pairs by the first middle coordinate to limit the scan.
    std::vector<std::size_t> order(right.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) { return position(right.pairs[i].left)[0]; };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return key(i) < key(j); });
    std::vector<double> keys(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) keys[i] = key(order[i]);

    for (const auto& lp : left.pairs) {
        const auto& bm = lp.right;
        const double k0 = position(bm)[0];
        const double slack = tol * std::max(1.0, std::abs(k0));
        auto lo = std::lower_bound(keys.begin(), keys.end(), k0 - slack);
        double best = -1.0;
        std::size_t best_i = 0;
        for (auto it = lo; it != keys.end() && *it <= k0 + slack; ++it) {
            const auto& rp = right.pairs[order[it - keys.begin()]];
            const auto& bn = rp.left;
            if (!detail::vec_close(position(bm), position(bn), tol)) continue;
            const double dn = norm(normalized(direction(bm)) - normalized(direction(bn)));
            if (dn > tol) continue;
            const double score = distance(position(bm), position(bn)) + dn;
            if (best < 0.0 || score < best) {
                best = score;
                best_i = order[it - keys.begin()];
            }
        }
        if (best < 0.0) continue;
        const auto& rp = right.pairs[best_i];
        const double s = norm(direction(rp.left)) / norm(direction(bm));
        L a = lp.left;
        a.xi = a.xi * s;
        out.pairs.push_back({a, rp.right});
    }
    return out;
}

// Every image covector whose C_R image is the data covector b: there is at
// most one, with x1 taken as the positive root.
template <int N>
std::optional<Covector<N>> cr_preimage(const DataCovector<N>& b) {
    const double r = b.r();
    if (!(r > 0.0) || b.rho() == 0.0) return std::nullopt;
    const double tau = -b.rho() / r;
    const Vec<N> z = b.z();
    Vec<N> x{};
    double lateral = 0.0;
    for (int i = 1; i < N; ++i) {
        x[i] = z[i] - b.dir[i - 1] / tau;
        lateral += (x[i] - z[i]) * (x[i] - z[i]);
    }
    if (r * r - lateral <= 0.0) return std::nullopt;
    x[0] = std::sqrt(r * r - lateral);
    return Covector<N>{x, tau * (x - z)};
}

template <int N>
DataCovector<N> cr_image(const Covector<N>& c, const Vec<N>& z, double tau) {
    DataCovector<N> b;
    for (int i = 1; i < N; ++i) {
        b.p[i - 1] = z[i];
        b.dir[i - 1] = tau * (z[i] - c.x[i]);
    }
    b.p[N - 1] = distance(c.x, z);
    b.dir[N - 1] = -tau * b.p[N - 1];
    return b;
}

// Random samplers. Image points are drawn from x1 in [0.2, 2.5] and the
// other coordinates in [-1.5, 1.5].
namespace detail {

template <int N>
Vec<N> random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u1(0.2, 2.5), u(-1.5, 1.5);
    Vec<N> x;
    x[0] = u1(rng);
    for (int i = 1; i < N; ++i) x[i] = u(rng);
    return x;
}

inline double random_tau(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> m(0.5, 2.0);
    std::bernoulli_distribution sgn(0.5);
    return sgn(rng) ? m(rng) : -m(rng);
}

}  // namespace detail

template <int N>
RelationSample<DataCovector<N>, Covector<N>> sample_cr(const GammaSpec<N>& gamma, std::mt19937_64& rng, int count) {
    RelationSample<DataCovector<N>, Covector<N>> s;
    for (int n = 0; n < count; ++n) {
        const Vec<N> x = detail::random_point<N>(rng);
        Vec<N> z{};
        for (int i = 1; i < N; ++i) {
            std::uniform_real_distribution<double> u(-gamma.half[i - 1], gamma.half[i - 1]);
            z[i] = u(rng);
        }
        const double tau = detail::random_tau(rng);
        const Covector<N> c{x, tau * (x - z)};
        s.pairs.push_back({cr_image(c, z, tau), c});
    }
    return s;
}

// C_A samples over the boundary strata: endpoints in 2D; vertices
// (arbitrary tau') and edges (tau' normal to the edge) in 3D.
template <int N>
RelationSample<DataCovector<N>, Covector<N>> sample_ca(const GammaSpec<N>& gamma, std::mt19937_64& rng, int count) {
    RelationSample<DataCovector<N>, Covector<N>> s;
    std::uniform_int_distribution<int> pick(0, 7);
    for (int n = 0; n < count; ++n) {
        const Vec<N> y = detail::random_point<N>(rng);
        Vec<N> z{};
        Vec<N> bump{};
        if constexpr (N == 2) {
            z[1] = (pick(rng) % 2) ? gamma.half[0] : -gamma.half[0];
            bump[0] = detail::random_tau(rng);
        } else {
            const int which = pick(rng);
            if (which < 4) {
                z = gamma.vertex(which + 1);
                bump[0] = detail::random_tau(rng);
                bump[1] = detail::random_tau(rng);
            } else {
                const int edge = which + 1;  // 5..8
                const int frozen = edge <= 6 ? 2 : 1;  // coordinate fixed on the edge
                const int free = 3 - frozen;
                std::uniform_real_distribution<double> u(-gamma.half[free - 1], gamma.half[free - 1]);
                z[free] = u(rng);
                z[frozen] = (edge == 5 || edge == 8) ? gamma.half[frozen - 1] : -gamma.half[frozen - 1];
                bump[frozen - 1] = detail::random_tau(rng);
            }
        }
        const double tau = detail::random_tau(rng);
        const Covector<N> c{y, tau * (y - z)};
        DataCovector<N> b = cr_image(c, z, tau);
        for (int i = 0; i < N - 1; ++i) b.dir[i] += bump[i];
        s.pairs.push_back({b, c});
    }
    return s;
}

// Left leg for a composition test: the C_R^t pairs sitting over the middle
// covectors of `right`, mixed with `distractors` unrelated C_R^t pairs.
template <int N>
RelationSample<Covector<N>, DataCovector<N>> cr_transpose_over(
    const RelationSample<DataCovector<N>, Covector<N>>& right, const GammaSpec<N>& gamma, std::mt19937_64& rng,
    int distractors) {
    RelationSample<Covector<N>, DataCovector<N>> left;
    for (const auto& p : right.pairs)
        if (auto x = cr_preimage(p.left)) left.pairs.push_back({*x, p.left});
    const auto extra = transpose(sample_cr(gamma, rng, distractors));
    left.pairs.insert(left.pairs.end(), extra.pairs.begin(), extra.pairs.end());
    return left;
}

// Exact half-integer orders, stored as twice the value.
struct HalfOrder {
    int twice = 0;

    static constexpr HalfOrder whole(int v) { return {2 * v}; }
    static constexpr HalfOrder half(int twice_value) { return {twice_value}; }

    friend constexpr HalfOrder operator+(HalfOrder a, HalfOrder b) { return {a.twice + b.twice}; }
    friend constexpr HalfOrder operator-(HalfOrder a) { return {-a.twice}; }
    friend constexpr bool operator==(HalfOrder, HalfOrder) = default;

    bool integral() const { return twice % 2 == 0; }
    double value() const { return 0.5 * twice; }
    std::string str() const { return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2"; }
};

enum class Verdict { Reconstructed, Artifact, Smooth, Undetermined };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Reconstructed: return "reconstructed";
        case Verdict::Artifact: return "artifact";
        case Verdict::Smooth: return "smooth";
        case Verdict::Undetermined: return "undetermined";
    }
    return "?";
}

// Kernel order m of the cutoff-generated part on each boundary stratum.
inline HalfOrder kernel_order(ZoneKind zone, int k) {
    switch (zone) {
        case ZoneKind::Boundary: return HalfOrder::half(-2 * k - 1);
        case ZoneKind::Corner: return HalfOrder::whole(-2 * k - 1);
        case ZoneKind::Edge: return HalfOrder::half(-2 * k - 1);
        default: return HalfOrder::whole(0);
    }
}

// Rank surplus of the relation's projection: 1 for rotations about a point,
// 2 for rotations about a line.
inline int rank_surplus(ZoneKind zone) { return zone == ZoneKind::Edge ? 2 : 1; }

// Sobolev shift m + (n - r)/2.
inline HalfOrder sobolev_shift(ZoneKind zone, int k, int dim) {
    return kernel_order(zone, k) + HalfOrder::half(dim - rank_surplus(zone));
}

// The table the shift must reproduce: how many orders smoother the artifact is.
inline int tabulated_orders_smoother(ZoneKind zone, int k) {
    switch (zone) {
        case ZoneKind::Boundary: return k;
        case ZoneKind::Corner: return 2 * k;
        case ZoneKind::Edge: return k;
        default: return 0;
    }
}

template <int N>
struct OrderPrediction {
    Covector<N> input;
    Zone zone;
    int k = 0;
    std::optional<HalfOrder> kernel_order;
    int rank_surplus = 0;
    std::optional<HalfOrder> shift;
    Verdict verdict = Verdict::Smooth;
    double symbol = 0.0;       // Reconstructed: chi(z)
    int orders_smoother = 0;   // Artifact
    std::string locus_id = "none";
    std::vector<Covector<N>> locus;
    // Part of a corner locus shared with an edge rotation; left undetermined.
    std::vector<Covector<N>> undetermined;
};

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

template <int N>
OrderPrediction<N> predict_singularity_map(const Covector<N>& cov, const CutoffSpec<N>& spec,
                                           const GammaSpec<N>& gamma, int nsamples = 64, double tol = 1e-12) {
    OrderPrediction<N> out;
    out.input = cov;
    out.k = spec.k();
    out.zone = classify_covector(cov, gamma, tol);
    const ZoneKind kind = out.zone.kind;

    if (kind == ZoneKind::Invisible) return out;
    const Vec<N> z = *line_plane_intersection(cov);
    if (kind == ZoneKind::Visible) {
        out.verdict = Verdict::Reconstructed;
        out.kernel_order = HalfOrder::whole(0);
        out.rank_surplus = N;
        out.shift = HalfOrder::whole(0);
        out.symbol = eval_chi(spec, z);
        out.locus_id = "diagonal";
        return out;
    }

    const Vec<N> center = rotation_center(cov, out.zone, gamma);
    // Cutoff identically zero around the center: no artifact is generated.
    const double nb = 1e-9;
    bool dead = false;
    for (int i = 0; i < N - 1; ++i) dead = dead || spec.h[i].vanishes_near(center[i + 1], nb);
    if (dead) {
        out.locus_id = "excluded";
        return out;
    }

    out.kernel_order = kernel_order(kind, out.k);
    out.rank_surplus = rank_surplus(kind);
    out.shift = sobolev_shift(kind, out.k, N);
    out.verdict = Verdict::Artifact;
    out.orders_smoother = -out.shift->twice / 2;
    out.locus = artifact_locus(cov, out.zone, gamma, nsamples);

    if constexpr (N == 2) {
        out.locus_id = out.zone.index > 0 ? "circle:z+" : "circle:z-";
    } else if (kind == ZoneKind::Corner) {
        out.locus_id = "sphere:v" + std::to_string(out.zone.index);
        // Edges through the vertex: the pair could also come from an edge rotation.
        const int j = out.zone.index;
        const int e_z3 = (j == 1 || j == 3) ? 5 : 6;
        const int e_z2 = (j == 1 || j == 2) ? 8 : 7;
        for (int e : {e_z3, e_z2}) {
            auto arc = artifact_locus(cov, Zone{ZoneKind::Edge, e}, gamma, nsamples);
            out.undetermined.insert(out.undetermined.end(), arc.begin(), arc.end());
        }
    } else {
        out.locus_id = "edge-circle:e" + std::to_string(out.zone.index) + "@" +
                       detail::fmt_coord(center[out.zone.index <= 6 ? 1 : 2]);
    }
    return out;
}

// Verdict for a specific output covector x paired with the input (y, eta):
// Undetermined where vertex and edge rotations overlap.
template <int N>
Verdict pair_verdict(const OrderPrediction<N>& pred, const Covector<N>& x, const GammaSpec<N>& gamma, double tol) {
    if (pred.verdict != Verdict::Artifact) return pred.verdict;
    if constexpr (N == 3) {
        if (pred.zone.kind == ZoneKind::Corner) {
            const int j = pred.zone.index;
            for (int e : {(j == 1 || j == 3) ? 5 : 6, (j == 1 || j == 2) ? 8 : 7})
                if (relation_membership(RelationTag{RelationKind::LambdaEdge, e}, {x, pred.input}, gamma, tol))
                    return Verdict::Undetermined;
        }
    }
    return Verdict::Artifact;
}

}  // namespace srtl
