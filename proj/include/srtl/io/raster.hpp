#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "srtl/error.hpp"
#include "srtl/grid.hpp"

namespace srtl::io {

static_assert(std::endian::native == std::endian::little, "raster I/O assumes a little-endian host");

// 64-byte header: magic "SRTL0001", u16 dim, three u16 axis counts, three
// f64 axis minima, three f64 spacings (unused slots zero), then the values
// as little-endian f64 in row-major order (last axis fastest).
struct RasterHeader {
    int dim = 0;
    std::array<int, 3> count{};
    std::array<double, 3> min{};
    std::array<double, 3> spacing{};

    std::size_t size() const {
        std::size_t n = 1;
        for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(count[i]);
        return n;
    }
};

inline constexpr char raster_magic[8] = {'S', 'R', 'T', 'L', '0', '0', '0', '1'};
inline constexpr std::size_t raster_header_bytes = 64;

inline void write_raster(const std::string& path, const RasterHeader& h, const std::vector<double>& values) {
    if (h.dim < 1 || h.dim > 3) throw std::invalid_argument("raster dimension must be 1..3");
    if (values.size() != h.size()) throw std::invalid_argument("raster value count does not match the header");
    unsigned char buf[raster_header_bytes] = {};
    std::memcpy(buf, raster_magic, 8);
    auto put16 = [&](std::size_t off, int v) {
        if (v < 0 || v > 65535) throw std::invalid_argument("raster axis count exceeds 65535");
        const std::uint16_t u = static_cast<std::uint16_t>(v);
        std::memcpy(buf + off, &u, 2);
    };
    put16(8, h.dim);
    for (int i = 0; i < 3; ++i) put16(10 + 2 * i, i < h.dim ? h.count[i] : 0);
    for (int i = 0; i < 3; ++i) {
        const double m = i < h.dim ? h.min[i] : 0.0, s = i < h.dim ? h.spacing[i] : 0.0;
        std::memcpy(buf + 16 + 8 * i, &m, 8);
        std::memcpy(buf + 40 + 8 * i, &s, 8);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(buf), raster_header_bytes);
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * 8));
    if (!out) throw std::runtime_error("short write to " + path);
}

inline std::pair<RasterHeader, std::vector<double>> read_raster(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open raster " + path);
    unsigned char buf[raster_header_bytes];
    if (!in.read(reinterpret_cast<char*>(buf), raster_header_bytes)) throw ConfigError(path + ": truncated header");
    if (std::memcmp(buf, raster_magic, 8) != 0) throw ConfigError(path + ": not an SRTL0001 raster");
    auto get16 = [&](std::size_t off) {
        std::uint16_t u;
        std::memcpy(&u, buf + off, 2);
        return static_cast<int>(u);
    };
    RasterHeader h;
    h.dim = get16(8);
    if (h.dim < 1 || h.dim > 3) throw ConfigError(path + ": bad dimension");
    for (int i = 0; i < 3; ++i) {
        h.count[i] = get16(10 + 2 * i);
        std::memcpy(&h.min[i], buf + 16 + 8 * i, 8);
        std::memcpy(&h.spacing[i], buf + 40 + 8 * i, 8);
    }
    for (int i = 0; i < h.dim; ++i)
        if (h.count[i] < 1) throw ConfigError(path + ": empty axis");
    std::vector<double> v(h.size());
    if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * 8)))
        throw ConfigError(path + ": truncated data");
    return {h, std::move(v)};
}

template <int N>
RasterHeader header_of(const ImageGeometry<N>& g) {
    RasterHeader h;
    h.dim = N;
    for (int i = 0; i < N; ++i) {
        h.count[i] = g.count[i];
        h.min[i] = g.lo[i];
        h.spacing[i] = g.spacing[i];
    }
    return h;
}

// A sinogram is stored on axes (z2[, z3], t).
template <int N>
RasterHeader header_of(const SinogramGeometry<N>& g) {
    RasterHeader h;
    h.dim = N;
    for (int i = 0; i < N - 1; ++i) {
        h.count[i] = g.nz[i];
        h.min[i] = -g.half_window[i];
        h.spacing[i] = g.dz(i);
    }
    h.count[N - 1] = g.nt;
    h.min[N - 1] = g.t(0);
    h.spacing[N - 1] = g.dt();
    return h;
}

template <int N>
void write_image(const std::string& path, const ImageGrid<N>& img) {
    write_raster(path, header_of(img.geo), img.values);
}

template <int N>
void write_sinogram(const std::string& path, const SinogramGrid<N>& s) {
    write_raster(path, header_of(s.geo), s.values);
}

template <int N>
ImageGrid<N> read_image(const std::string& path) {
    auto [h, v] = read_raster(path);
    if (h.dim != N) throw ConfigError(path + ": expected a " + std::to_string(N) + "D image");
    ImageGeometry<N> g;
    for (int i = 0; i < N; ++i) {
        g.lo[i] = h.min[i];
        g.spacing[i] = h.spacing[i];
        g.count[i] = h.count[i];
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    ImageGrid<N> img(g);
    img.values = std::move(v);
    return img;
}

template <int N>
SinogramGrid<N> read_sinogram(const std::string& path) {
    auto [h, v] = read_raster(path);
    if (h.dim != N) throw ConfigError(path + ": expected a " + std::to_string(N) + "D sinogram");
    SinogramGeometry<N> g;
    for (int i = 0; i < N - 1; ++i) {
        g.nz[i] = h.count[i];
        g.half_window[i] = -h.min[i];
    }
    g.nt = h.count[N - 1];
    g.t_max = h.spacing[N - 1] * g.nt;
    if (std::abs(h.min[N - 1] - h.spacing[N - 1]) > 1e-12 * g.t_max)
        throw ConfigError(path + ": radius axis must start at t_max / nt");
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    for (int i = 0; i < N - 1; ++i)
        if (std::abs(g.dz(i) - h.spacing[i]) > 1e-12 * g.half_window[i])
            throw ConfigError(path + ": detector axis is not symmetric about 0");
    SinogramGrid<N> s(g);
    s.values = std::move(v);
    return s;
}

// Shortest decimal that round-trips.
inline std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

using CsvRow = std::vector<std::string>;

inline void write_csv(const std::string& path, const CsvRow& header, const std::vector<CsvRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto line = [&](const CsvRow& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw std::invalid_argument("csv row width does not match the header");
        line(r);
    }
}

// Sidecar record: `key: value` lines in insertion order.
using MetaRecord = std::vector<std::pair<std::string, std::string>>;

inline void write_meta(const std::string& path, const MetaRecord& meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& [k, v] : meta) out << k << ": " << v << '\n';
}

}  // namespace srtl::io
