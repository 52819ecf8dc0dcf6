#include <catch_amalgamated.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "srtl/io/config.hpp"
#include "srtl/io/raster.hpp"

using namespace srtl;
using io::Config;

namespace {

std::string tmp(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "srtl_test_io";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

}  // namespace

TEST_CASE("config parses sections, comments and typed values", "[io]") {
    const auto c = Config::parse_string(R"(
# leading comment
[cutoff]
k = 2          ; trailing comment
family = plateau
[image]
lo = 0.05, -1.5
apodize = yes
[phantom]
ball = 1.2 0 0.5 1
ball = 1.0 0.5 0.2 -1
)");
    CHECK(c.get_int("cutoff", "k") == 2);
    CHECK(c.get_string("cutoff", "family") == "plateau");
    CHECK(c.get_doubles("image", "lo") == std::vector<double>{0.05, -1.5});
    CHECK(c.get_bool("image", "apodize", false));
    CHECK(c.get_double("image", "missing", 3.5) == 3.5);
    CHECK(c.get_all("phantom", "ball").size() == 2);
    CHECK(c.unused().empty());
}

TEST_CASE("config reports unused keys", "[io]") {
    const auto c = Config::parse_string("[a]\nx = 1\ny = 2\n");
    c.get_int("a", "x");
    REQUIRE(c.unused() == std::vector<std::string>{"[a] y"});
    CHECK_THROWS_AS(c.require_all_used(), ConfigError);
}

TEST_CASE("malformed configs raise ConfigError", "[io]") {
    CHECK_THROWS_AS(Config::parse_string("k = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[a\nk = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[a]\njunk\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[a]\nk =\n"), ConfigError);
    const auto c = Config::parse_string("[a]\nk = 1x\nb = maybe\nd = 1\nd = 2\n");
    CHECK_THROWS_AS(c.get_double("a", "k"), ConfigError);
    CHECK_THROWS_AS(c.get_int("a", "k"), ConfigError);
    CHECK_THROWS_AS(c.get_bool("a", "b", false), ConfigError);
    CHECK_THROWS_AS(c.get_int("a", "d"), ConfigError);
    CHECK_THROWS_AS(c.get_int("a", "missing"), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/path.ini"), ConfigError);
}

TEST_CASE("raster header layout", "[io]") {
    const auto g = ImageGeometry<2>::box({{0.5, -1.0}}, {{2.0, 1.0}}, {{4, 3}});
    ImageGrid<2> img(g);
    for (std::size_t i = 0; i < g.size(); ++i) img[i] = 0.25 * static_cast<double>(i);
    const auto path = tmp("layout.srt");
    io::write_image(path, img);

    std::ifstream in(path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(bytes.size() == 64 + 8 * 12);
    CHECK(std::memcmp(bytes.data(), "SRTL0001", 8) == 0);
    std::uint16_t dim, c0, c1, c2;
    std::memcpy(&dim, bytes.data() + 8, 2);
    std::memcpy(&c0, bytes.data() + 10, 2);
    std::memcpy(&c1, bytes.data() + 12, 2);
    std::memcpy(&c2, bytes.data() + 14, 2);
    CHECK(dim == 2);
    CHECK(c0 == 4);
    CHECK(c1 == 3);
    CHECK(c2 == 0);
    double lo1, sp0, v5;
    std::memcpy(&lo1, bytes.data() + 24, 8);
    std::memcpy(&sp0, bytes.data() + 40, 8);
    std::memcpy(&v5, bytes.data() + 64 + 5 * 8, 8);
    CHECK(lo1 == -1.0);
    CHECK(sp0 == Catch::Approx(0.5));
    CHECK(v5 == 1.25);
}

TEST_CASE("image and sinogram rasters round-trip", "[io]") {
    const auto g = ImageGeometry<3>::box({{0.1, -1.0, -0.5}}, {{1.1, 1.0, 0.5}}, {{3, 4, 5}});
    ImageGrid<3> img(g);
    for (std::size_t i = 0; i < g.size(); ++i) img[i] = std::sin(1.0 + static_cast<double>(i));
    io::write_image(tmp("img3.srt"), img);
    const auto back = io::read_image<3>(tmp("img3.srt"));
    CHECK(back.geo == img.geo);
    CHECK(back.values == img.values);

    const auto sg = SinogramGeometry<2>::make({9}, {1.5}, 16, 3.0);
    SinogramGrid<2> s(sg);
    for (std::size_t i = 0; i < sg.size(); ++i) s.values[i] = 1.0 / (1.0 + static_cast<double>(i));
    io::write_sinogram(tmp("sino2.srt"), s);
    const auto sb = io::read_sinogram<2>(tmp("sino2.srt"));
    CHECK(sb.geo.nz == sg.nz);
    CHECK(sb.geo.nt == sg.nt);
    CHECK(sb.geo.t_max == Catch::Approx(sg.t_max).epsilon(1e-14));
    CHECK(sb.geo.half_window[0] == sg.half_window[0]);
    CHECK(sb.values == s.values);

    CHECK_THROWS_AS(io::read_image<2>(tmp("img3.srt")), ConfigError);
}

TEST_CASE("corrupt rasters are rejected", "[io]") {
    {
        std::ofstream out(tmp("bad.srt"), std::ios::binary);
        out << "NOTARASTER_______________________________________________________";
    }
    CHECK_THROWS_AS(io::read_raster(tmp("bad.srt")), ConfigError);
    const auto g = ImageGeometry<2>::box({{0.5, 0.0}}, {{1.0, 1.0}}, {{8, 8}});
    io::write_image(tmp("trunc.srt"), ImageGrid<2>(g));
    std::filesystem::resize_file(tmp("trunc.srt"), 64 + 8 * 10);
    CHECK_THROWS_AS(io::read_raster(tmp("trunc.srt")), ConfigError);
}

TEST_CASE("meta and csv writers", "[io]") {
    io::write_meta(tmp("x.meta"), {{"claim", "demo"}, {"k", "1"}});
    std::ifstream in(tmp("x.meta"));
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "claim: demo\nk: 1\n");
    CHECK_THROWS(io::write_csv(tmp("x.csv"), {"a", "b"}, {{"1"}}));
    CHECK(io::fmt(0.1) == "0.10000000000000001");
}
