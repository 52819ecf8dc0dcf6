#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include "srtl/io/raster.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "srtl_test_cli";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SRTL_BIN) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string config(const std::string& name) { return (fs::path(SRTL_CONFIGS) / name).string(); }

fs::path fresh(const std::string& name) {
    const fs::path p = kScratch / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_config(const std::string& name, const std::string& text) {
    fs::create_directories(kScratch);
    const fs::path p = kScratch / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("forward on the zero phantom writes an all-zero sinogram", "[cli]") {
    const auto out = fresh("zero");
    REQUIRE(run_cli("forward --config " + config("zero.ini") + " --out " + out.string()) == 0);
    const auto s = srtl::io::read_sinogram<2>((out / "sinogram.srt").string());
    CHECK(s.values.size() == 64u * 128u);
    for (double v : s.values) REQUIRE(v == 0.0);
    CHECK(slurp(out / "sinogram.meta").rfind("claim: ", 0) == 0);
}

TEST_CASE("malformed config exits 2 and writes nothing", "[cli]") {
    const auto out = fresh("malformed");
    CHECK(run_cli("forward --config " + write_config("bad.ini", "[detector\ncount = 4\n").string() + " --out " +
               out.string()) == 2);
    CHECK(run_cli("forward --config " + write_config("typo.ini", "[experiment]\ndim = 2\ncolor = red\n").string() +
               " --out " + out.string()) == 2);
    CHECK(run_cli("forward --config /nonexistent.ini --out " + out.string()) == 2);
    CHECK(run_cli("forward --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("t_max below the phantom reach exits 3", "[cli]") {
    const auto cfg = write_config("short.ini",
                                  "[experiment]\ndim = 2\n[phantom]\nball = 1.2 0 0.5 1\n"
                                  "[detector]\nhalf_window = 1\ncount = 16\nradii = 32\nt_max = 1.0\n");
    CHECK(run_cli("forward --config " + cfg.string() + " --out " + fresh("short").string()) == 3);
}

TEST_CASE("outputs are byte-identical across runs and thread counts", "[cli]") {
    const auto a = fresh("det_a"), b = fresh("det_b");
    REQUIRE(run_cli("artifact-map --config " + config("disk2d.ini") + " --threads 1 --out " + a.string()) == 0);
    REQUIRE(run_cli("artifact-map --config " + config("disk2d.ini") + " --threads 3 --out " + b.string()) == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        INFO(e.path().filename());
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        ++files;
    }
    CHECK(files == 10);
}

TEST_CASE("every output has a sidecar naming its claim", "[cli]") {
    const auto out = fresh("wf");
    REQUIRE(run_cli("wf-predict --config " + config("wavefront3d.ini") + " --out " + out.string()) == 0);
    REQUIRE(run_cli("symbol-order --config " + config("symbol.ini") + " --out " + out.string()) == 0);
    int outputs = 0;
    for (const auto& e : fs::directory_iterator(out)) {
        if (e.path().extension() == ".meta") continue;
        ++outputs;
        const auto meta = out / (e.path().stem().string() + ".meta");
        INFO(e.path().filename());
        REQUIRE(fs::exists(meta));
        CHECK(slurp(meta).rfind("claim: ", 0) == 0);
    }
    CHECK(outputs == 6);
}

TEST_CASE("suite writes a report with one row per criterion", "[cli]") {
    const auto out = fresh("suite");
    CHECK(run_cli("suite --config " + config("suite_quick.ini") + " --out " + out.string()) == 0);
    const std::string report = slurp(out / "report.txt");
    for (int id : {2, 3, 7}) CHECK(report.find("criterion " + std::to_string(id) + " PASS") != std::string::npos);
    CHECK(report.find("all 3 criteria passed") != std::string::npos);
}
