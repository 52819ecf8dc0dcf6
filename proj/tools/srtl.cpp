// srtl: experiment runner for the limited-data spherical mean reconstruction.
//
//   srtl <subcommand> --config PATH [--out DIR] [--threads N] [--seed U64]
//
// Exit codes: 0 success, 1 suite ran with failing criteria, 2 config or
// usage error, 3 numerical precondition violation.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "srtl/acceptance.hpp"
#include "srtl/analysis.hpp"
#include "srtl/asymptotics.hpp"
#include "srtl/io/config.hpp"
#include "srtl/io/experiment.hpp"
#include "srtl/io/raster.hpp"
#include "srtl/loci.hpp"
#include "srtl/parallel.hpp"
#include "srtl/reconstruct.hpp"
#include "srtl/transform.hpp"
#include "srtl/wavefront.hpp"

namespace fs = std::filesystem;
using namespace srtl;
using io::Config;
using io::CsvRow;
using io::fmt;
using io::MetaRecord;

namespace {

struct Run {
    std::string command;
    std::string config_path;
    fs::path out = ".";
    std::uint64_t seed = 20240601;
    int threads = 0;

    std::string file(const std::string& name) const { return (out / name).string(); }

    // Sidecar for `name.ext` is `name.meta`.
    void meta(const std::string& name, const std::string& claim, MetaRecord extra = {}) const {
        MetaRecord m{{"claim", claim}, {"command", command}, {"config", config_path}, {"seed", std::to_string(seed)}};
        m.insert(m.end(), extra.begin(), extra.end());
        io::write_meta(file(fs::path(name).stem().string() + ".meta"), m);
    }
};

namespace claim {
constexpr const char* forward = "spherical mean data R f of the phantom over the detector window";
constexpr const char* reconstruct =
    "T f = (x1/pi^n) R* P chi R f recovers visible singularities with amplitude chi(z)";
constexpr const char* residual = "T f - f: added singularities of the limited-data reconstruction";
constexpr const char* loci =
    "added singularities lie on rotations of boundary covectors about the detector endpoints, vertices or edges";
constexpr const char* strength = "artifacts are smoother than the reconstructed edge by the cutoff vanishing order";
constexpr const char* lemma = "one-sided oscillatory integral decays as lambda^-(k+1) with the endpoint leading term";
constexpr const char* kernel3d = "3D kernel has order 2-2(k+1) at vertex configurations and 2-(k+1) on edges";
constexpr const char* wavefront =
    "artifact orders smoother: k at 2D endpoints, 2k at 3D vertices, k on 3D edges; visible symbol chi(z)";
constexpr const char* suite = "acceptance battery";
}  // namespace claim

template <std::size_t M>
std::string vec_str(const std::array<double, M>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + fmt(x);
    return s;
}

MetaRecord meta_of(const Metadata& m) { return MetaRecord(m.begin(), m.end()); }

// forward -----------------------------------------------------------------

template <int N>
int run_forward(const Run& run, const Config& c) {
    const auto f = io::phantom_from<N>(c);
    const auto sg = io::detector_from<N>(c);
    c.require_all_used();
    fs::create_directories(run.out);
    const auto s = forward(f, sg);
    io::write_sinogram(run.file("sinogram.srt"), s);
    run.meta("sinogram.srt", claim::forward,
             {{"dim", std::to_string(N)},
              {"components", std::to_string(f.components.size())},
              {"detectors", std::to_string(sg.detectors())},
              {"radii", std::to_string(sg.nt)},
              {"t_max", fmt(sg.t_max)}});
    return 0;
}

// reconstruct ---------------------------------------------------------------

// The sinogram comes from [input] sinogram when given, else from the phantom.
template <int N>
struct ReconstructJob {
    Phantom<N> phantom;
    std::optional<SinogramGrid<N>> sinogram;
    std::optional<SinogramGeometry<N>> detector;
    GammaSpec<N> gamma;
    CutoffSpec<N> spec;
    ImageGeometry<N> image;
    ReconstructOptions options;

    static ReconstructJob from(const Config& c) {
        ReconstructJob j;
        j.phantom = io::phantom_from<N>(c);
        if (c.has("input", "sinogram")) {
            j.sinogram = io::read_sinogram<N>(c.get_string("input", "sinogram"));
            j.gamma.half = j.sinogram->geo.half_window;
        } else {
            if (j.phantom.components.empty()) throw ConfigError(c.source() + ": need [input] sinogram or a phantom");
            j.detector = io::detector_from<N>(c);
            j.gamma = io::gamma_from<N>(c);
        }
        j.spec = io::cutoff_from<N>(c, j.gamma);
        j.image = io::image_from<N>(c);
        j.options = io::filter_from(c);
        return j;
    }

    Reconstruction<N> execute() {
        if (!sinogram) sinogram = forward(phantom, *detector);
        return reconstruct_T(*sinogram, spec, image, options);
    }
};

template <int N>
int run_reconstruct(const Run& run, const Config& c) {
    auto job = ReconstructJob<N>::from(c);
    c.require_all_used();
    fs::create_directories(run.out);
    const auto rec = job.execute();
    io::write_image(run.file("image.srt"), rec.image);
    auto m = meta_of(rec.meta);
    if (!job.phantom.components.empty())
        m.emplace_back("relative_l2_error",
                       fmt(relative_l2_error(rec.image, job.phantom, [](const Vec<N>&) { return true; })));
    run.meta("image.srt", claim::reconstruct, m);
    return 0;
}

// artifact-map --------------------------------------------------------------

template <int N>
int run_artifact_map(const Run& run, const Config& c) {
    auto job = ReconstructJob<N>::from(c);
    std::optional<ImageGrid<N>> given;
    if (c.has("input", "image")) given = io::read_image<N>(c.get_string("input", "image"));
    PeakOptions po;
    po.quantile = c.get_double("artifact", "quantile", 0.99);
    po.highpass_sigma = c.get_double("artifact", "highpass_sigma", 3.0);
    po.border = static_cast<int>(c.get_int("artifact", "border", 3));
    const double band = c.get_double("artifact", "edge_band", 6.0);
    if (!(po.quantile >= 0.0 && po.quantile < 1.0)) throw ConfigError(c.source() + ": [artifact] quantile in [0,1)");
    struct ProbeIn {
        Vec<N> point, direction;
    };
    std::vector<ProbeIn> probes_in;
    for (const auto& e : c.get_all("artifact", "probe")) {
        const auto v = io::detail::entry_doubles(c, e, "artifact", 2 * N);
        probes_in.push_back({io::detail::take_vec<N>(v, 0), io::detail::take_vec<N>(v, N)});
    }
    const auto loci = io::detail::as_config_error(c.source() + ": [phantom]",
                                                  [&] { return BallLoci<N>(job.phantom, job.gamma); });
    c.require_all_used();
    if (given && !(given->geo == job.image))
        throw ConfigError(c.source() + ": [input] image does not match the [image] grid");
    fs::create_directories(run.out);

    const ImageGrid<N> image = given ? *given : job.execute().image;
    const auto ref = rasterize(job.phantom, job.image);
    double cell = job.image.spacing[0];
    for (int i = 1; i < N; ++i) cell = std::min(cell, job.image.spacing[i]);

    // Cells inside a ball or within `band` cells of its boundary are skipped.
    auto keep = [&](const Vec<N>& x) {
        for (const auto& comp : job.phantom.components)
            if (const auto* b = std::get_if<BallIndicator<N>>(&comp))
                if (distance(x, b->center) - b->radius <= band * cell) return false;
        return true;
    };
    const auto peaks = artifact_peaks(image, ref, po, keep);

    ImageGrid<N> residual(job.image), locus_dist(job.image);
    for (std::size_t i = 0; i < job.image.size(); ++i) residual[i] = image[i] - ref[i];
    parallel_for(0, static_cast<std::ptrdiff_t>(job.image.size()),
                 [&](std::ptrdiff_t i) { locus_dist[i] = loci.distance(job.image.point(i)) / cell; });
    io::write_image(run.file("residual.srt"), residual);
    run.meta("residual.srt", claim::residual);
    io::write_image(run.file("locus_distance.srt"), locus_dist);
    run.meta("locus_distance.srt", claim::loci, {{"units", "cells"}});

    CsvRow head;
    for (int i = 0; i < N; ++i) head.push_back("x" + std::to_string(i + 1));
    head.insert(head.end(), {"residual_highpass", "locus_distance_cells"});
    std::vector<CsvRow> rows;
    std::vector<Vec<N>> pts;
    for (const auto& p : peaks) {
        CsvRow r;
        for (int i = 0; i < N; ++i) r.push_back(fmt(p.point[i]));
        r.push_back(fmt(p.value));
        r.push_back(fmt(loci.distance(p.point) / cell));
        rows.push_back(r);
        pts.push_back(p.point);
    }
    io::write_csv(run.file("peaks.csv"), head, rows);
    run.meta("peaks.csv", claim::loci, {{"quantile", fmt(po.quantile)}, {"highpass_sigma_cells", fmt(po.highpass_sigma)}});

    std::vector<CsvRow> mrows;
    if (!pts.empty()) {
        const auto m = locus_match<N>(pts, [&](const Vec<N>& x) { return loci.distance(x); }, cell);
        mrows.push_back({std::to_string(pts.size()), fmt(m.within1), fmt(m.within2), fmt(m.p95)});
    } else {
        mrows.push_back({"0", "nan", "nan", "nan"});
    }
    io::write_csv(run.file("match.csv"), {"peaks", "within1", "within2", "p95_cells"}, mrows);
    run.meta("match.csv", claim::loci);

    CsvRow phead;
    for (int i = 0; i < N; ++i) phead.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < N; ++i) phead.push_back("d" + std::to_string(i + 1));
    phead.insert(phead.end(), {"exponent", "raw_slope", "fit_residual", "smooth_floor"});
    std::vector<CsvRow> prows;
    for (const auto& pin : probes_in) {
        RegularityProbe<N> p;
        p.point = pin.point;
        p.direction = pin.direction;
        p.require_isolated = false;
        const auto out = local_regularity_exponent(image, p);
        CsvRow r;
        for (int i = 0; i < N; ++i) r.push_back(fmt(p.point[i]));
        for (int i = 0; i < N; ++i) r.push_back(fmt(p.direction[i]));
        r.insert(r.end(), {fmt(out.exponent), fmt(out.raw_slope), fmt(out.residual), out.smooth_floor ? "1" : "0"});
        prows.push_back(r);
    }
    io::write_csv(run.file("probes.csv"), phead, prows);
    run.meta("probes.csv", claim::strength);
    return 0;
}

// symbol-order --------------------------------------------------------------

int run_symbol_order(const Run& run, const Config& c) {
    std::vector<int> ks;
    for (double k : c.get_doubles("symbol", "k", {0, 1, 2})) {
        if (k < 0 || k != std::floor(k)) throw ConfigError(c.source() + ": [symbol] k must be nonnegative integers");
        ks.push_back(static_cast<int>(k));
    }
    const auto sts = c.get_doubles("symbol", "s_minus_t", {0.3, 0.7});
    for (double st : sts)
        if (!(st > 0.0)) throw ConfigError(c.source() + ": [symbol] s_minus_t must be positive");
    const std::string side = c.get_string("symbol", "side", "minus");
    if (side != "minus" && side != "plus") throw ConfigError(c.source() + ": [symbol] side must be minus or plus");
    const auto xv = io::detail::fixed_doubles(c, "symbol", "x", 3);
    const auto yvv = io::detail::fixed_doubles(c, "symbol", "y_vertex", 3);
    const auto yev = io::detail::fixed_doubles(c, "symbol", "y_edge", 3);
    const Vec3 x = io::detail::take_vec<3>(xv, 0), y_vertex = io::detail::take_vec<3>(yvv, 0),
               y_edge = io::detail::take_vec<3>(yev, 0);
    c.require_all_used();
    fs::create_directories(run.out);

    const Side s_side = side == "minus" ? Side::Minus : Side::Plus;
    const Endpoint end = side == "minus" ? Endpoint::C : Endpoint::D;
    std::vector<CsvRow> samples, fits, ksamples, kfits;
    for (int k : ks) {
        const auto h = CutoffProfile::polynomial(k).one_sided(s_side);
        for (double st : sts) {
            const double s = 0.5 * st, t = -0.5 * st;
            const auto fit = decay_sweep([&](double l) { return std::abs(oscillatory_A(h, s, t, l)); });
            for (std::size_t i = 0; i < fit.lambda.size(); ++i) {
                const double l = fit.lambda[i];
                samples.push_back({std::to_string(k), fmt(st), fmt(l), fmt(fit.magnitude[i]),
                                   fmt(std::abs(leading_term(h, end, s, t, l)))});
            }
            fits.push_back({std::to_string(k), fmt(st), fmt(fit.exponent), std::to_string(-(k + 1)),
                            fmt(fit.log_coeff), fmt(fit.residual)});
        }
        for (const auto& [name, y, pred] :
             {std::tuple{"vertex", y_vertex, 2 - 2 * (k + 1)}, std::tuple{"edge", y_edge, 2 - (k + 1)}}) {
            const auto fit = decay_sweep([&](double l) { return std::abs(kernel_amplitude_3d(h, h, x, y, l)); });
            for (std::size_t i = 0; i < fit.lambda.size(); ++i)
                ksamples.push_back({std::to_string(k), name, fmt(fit.lambda[i]), fmt(fit.magnitude[i])});
            kfits.push_back({std::to_string(k), name, fmt(fit.exponent), std::to_string(pred), fmt(fit.log_coeff),
                             fmt(fit.residual)});
        }
    }
    io::write_csv(run.file("lemma_samples.csv"), {"k", "s_minus_t", "lambda", "magnitude", "leading_magnitude"},
                  samples);
    run.meta("lemma_samples.csv", claim::lemma, {{"side", side}});
    io::write_csv(run.file("lemma_fits.csv"),
                  {"k", "s_minus_t", "exponent", "predicted", "log_coeff", "residual"}, fits);
    run.meta("lemma_fits.csv", claim::lemma, {{"side", side}});
    io::write_csv(run.file("kernel3d_samples.csv"), {"k", "configuration", "lambda", "magnitude"}, ksamples);
    run.meta("kernel3d_samples.csv", claim::kernel3d, {{"x", vec_str(x.v)}, {"y_vertex", vec_str(y_vertex.v)}, {"y_edge", vec_str(y_edge.v)}});
    io::write_csv(run.file("kernel3d_fits.csv"),
                  {"k", "configuration", "exponent", "predicted", "log_coeff", "residual"}, kfits);
    run.meta("kernel3d_fits.csv", claim::kernel3d, {{"x", vec_str(x.v)}, {"y_vertex", vec_str(y_vertex.v)}, {"y_edge", vec_str(y_edge.v)}});
    return 0;
}

// wf-predict ----------------------------------------------------------------

template <int N>
int run_wf_predict(const Run& run, const Config& c) {
    const auto gamma = io::gamma_from<N>(c);
    const auto spec = io::cutoff_from<N>(c, gamma);
    const long nsamples = c.get_int("wavefront", "samples", 64);
    if (nsamples < 2) throw ConfigError(c.source() + ": [wavefront] samples must be at least 2");
    std::vector<Covector<N>> covs;
    for (const auto& e : c.get_all("wavefront", "covector")) {
        const auto v = io::detail::entry_doubles(c, e, "wavefront", 2 * N);
        Covector<N> cv{io::detail::take_vec<N>(v, 0), io::detail::take_vec<N>(v, N)};
        if (!cv.valid())
            throw ConfigError(c.source() + ":" + std::to_string(e.line) + ": covector needs x1 > 0 and xi != 0");
        covs.push_back(cv);
    }
    if (covs.empty()) throw ConfigError(c.source() + ": [wavefront] needs at least one covector");
    c.require_all_used();
    fs::create_directories(run.out);

    CsvRow head{"id"};
    for (int i = 0; i < N; ++i) head.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < N; ++i) head.push_back("xi" + std::to_string(i + 1));
    head.insert(head.end(), {"zone", "verdict", "k", "kernel_order", "rank_surplus", "sobolev_shift",
                             "orders_smoother", "symbol", "locus_id", "locus_points", "undetermined_points"});
    CsvRow lhead{"id", "kind"};
    for (int i = 0; i < N; ++i) lhead.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < N; ++i) lhead.push_back("xi" + std::to_string(i + 1));
    std::vector<CsvRow> rows, lrows;
    for (std::size_t id = 0; id < covs.size(); ++id) {
        const auto p = predict_singularity_map(covs[id], spec, gamma, static_cast<int>(nsamples));
        CsvRow r{std::to_string(id)};
        for (int i = 0; i < N; ++i) r.push_back(fmt(covs[id].x[i]));
        for (int i = 0; i < N; ++i) r.push_back(fmt(covs[id].xi[i]));
        r.insert(r.end(), {p.zone.name(), verdict_name(p.verdict), std::to_string(p.k),
                           p.kernel_order ? p.kernel_order->str() : "", std::to_string(p.rank_surplus),
                           p.shift ? p.shift->str() : "", std::to_string(p.orders_smoother), fmt(p.symbol),
                           p.locus_id, std::to_string(p.locus.size()), std::to_string(p.undetermined.size())});
        rows.push_back(r);
        auto add = [&](const std::vector<Covector<N>>& pts, const char* kind) {
            for (const auto& q : pts) {
                CsvRow lr{std::to_string(id), kind};
                for (int i = 0; i < N; ++i) lr.push_back(fmt(q.x[i]));
                for (int i = 0; i < N; ++i) lr.push_back(fmt(q.xi[i]));
                lrows.push_back(lr);
            }
        };
        add(p.locus, "artifact");
        add(p.undetermined, "undetermined");
    }
    io::write_csv(run.file("predictions.csv"), head, rows);
    run.meta("predictions.csv", claim::wavefront, {{"dim", std::to_string(N)}, {"gamma", vec_str(gamma.half)}});
    io::write_csv(run.file("loci.csv"), lhead, lrows);
    run.meta("loci.csv", claim::loci, {{"dim", std::to_string(N)}, {"samples", std::to_string(nsamples)}});
    return 0;
}

// suite ---------------------------------------------------------------------

int run_suite(const Run& run, const Config& c) {
    std::vector<int> ids;
    for (double v : c.get_doubles("suite", "criteria", {1, 2, 3, 4, 5, 6, 7, 8})) {
        if (v != std::floor(v) || v < 1 || v > acceptance::criterion_count)
            throw ConfigError(c.source() + ": [suite] criteria must be integers in 1.." +
                              std::to_string(acceptance::criterion_count));
        ids.push_back(static_cast<int>(v));
    }
    c.require_all_used();
    fs::create_directories(run.out);

    acceptance::Context ctx;
    ctx.seed = run.seed;
    std::ofstream report(run.file("report.txt"));
    if (!report) throw std::runtime_error("cannot write " + run.file("report.txt"));
    std::vector<CsvRow> rows;
    int failed = 0;
    for (int id : ids) {
        const auto r = acceptance::run_criterion(id, ctx);
        const std::string line = acceptance::summary_line(r);
        std::cout << line << std::endl;
        report << line << "\n    claim: " << r.claim << "\n";
        for (const auto& n : r.notes) report << "    " << n << "\n";
        for (const auto& ch : r.checks)
            rows.push_back({std::to_string(id), ch.what, fmt(ch.value), ch.bound, ch.pass ? "pass" : "fail"});
        failed += !r.pass();
    }
    report << (failed ? std::to_string(failed) + " of " + std::to_string(ids.size()) + " criteria failed\n"
                      : "all " + std::to_string(ids.size()) + " criteria passed\n");
    io::write_csv(run.file("suite.csv"), {"criterion", "check", "value", "bound", "result"}, rows);
    run.meta("report.txt", claim::suite, {{"criteria", std::to_string(ids.size())}, {"failed", std::to_string(failed)}});
    run.meta("suite.csv", claim::suite);
    return failed ? 1 : 0;
}

int dispatch(const Run& run) {
    const Config c = Config::load(run.config_path);
    if (run.command == "symbol-order") return run_symbol_order(run, c);
    if (run.command == "suite") return run_suite(run, c);
    const int dim = io::experiment_dim(c);
    auto by_dim = [&](auto f2, auto f3) { return dim == 2 ? f2(run, c) : f3(run, c); };
    if (run.command == "forward") return by_dim(run_forward<2>, run_forward<3>);
    if (run.command == "reconstruct") return by_dim(run_reconstruct<2>, run_reconstruct<3>);
    if (run.command == "artifact-map") return by_dim(run_artifact_map<2>, run_artifact_map<3>);
    if (run.command == "wf-predict") return by_dim(run_wf_predict<2>, run_wf_predict<3>);
    throw ConfigError("unknown subcommand " + run.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limited-data spherical mean reconstruction experiments"};
    app.require_subcommand(1);
    Run run;
    std::string out = ".";
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"forward", "phantom to sinogram"},
        {"reconstruct", "sinogram or phantom to image and metadata"},
        {"artifact-map", "residual peaks, predicted loci and match statistics"},
        {"symbol-order", "decay sweeps of the oscillatory integral and the 3D kernel"},
        {"wf-predict", "covectors to predicted artifact orders and loci"},
        {"suite", "run the acceptance battery and write report.txt"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", run.config_path, "experiment config (INI)")->required();
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--threads", run.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", run.seed, "random seed")->capture_default_str();
        sub->callback([&run, n = std::string(name)] { run.command = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    run.out = out;
    set_thread_count(run.threads);

    try {
        return dispatch(run);
    } catch (const ConfigError& e) {
        std::cerr << "srtl: config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "srtl: precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "srtl: precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "srtl: error: " << e.what() << "\n";
        return 1;
    }
}
