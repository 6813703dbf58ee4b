#pragma once

// HMAP: the binary heuristic-map exchange format.
//
//   offset  size  field
//        0     4  magic "HMAP"
//        4     4  version, u32 LE (= 1)
//        8     1  kind, u8 (0 = CF, 1 = PP, 2 = ABS)
//        9     3  reserved, zero
//       12     4  height, u32 LE
//       16     4  width, u32 LE
//       20   4*N  values, f32 LE, row-major, N = height * width

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gridpath/error.hpp"
#include "gridpath/heuristics.hpp"

namespace gridpath {

inline constexpr std::array<char, 4> kHmapMagic{'H', 'M', 'A', 'P'};
inline constexpr std::uint32_t kHmapVersion = 1;
inline constexpr std::size_t kHmapHeaderSize = 20;
inline constexpr double kHmapRangeTolerance = 1e-6;

struct HmapReadOptions {
    // Keep continuous PP predictions as-is instead of zeroing values below
    // the path-probability cut.
    bool raw_pp = false;
};

struct HmapReadResult {
    HeuristicMap map;
    std::size_t clamped = 0;  // PP values zeroed because they fell below the cut
};

namespace detail {

inline void put_u32(char* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
}

inline std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace detail

inline std::vector<char> encode_hmap(const HeuristicMap& map) {
    std::vector<char> buf(kHmapHeaderSize + 4 * map.values().size(), '\0');
    std::memcpy(buf.data(), kHmapMagic.data(), kHmapMagic.size());
    detail::put_u32(buf.data() + 4, kHmapVersion);
    buf[8] = static_cast<char>(map.kind());
    detail::put_u32(buf.data() + 12, static_cast<std::uint32_t>(map.height()));
    detail::put_u32(buf.data() + 16, static_cast<std::uint32_t>(map.width()));
    char* out = buf.data() + kHmapHeaderSize;
    for (float v : map.values()) {
        if (!std::isfinite(v)) throw RangeError("heuristic map holds a non-finite value");
        detail::put_u32(out, std::bit_cast<std::uint32_t>(v));
        out += 4;
    }
    return buf;
}

/// Returns the number of bytes written.
inline std::size_t write_hmap(const HeuristicMap& map, std::ostream& out) {
    const auto buf = encode_hmap(map);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::ios_base::failure("hmap write failed");
    return buf.size();
}

inline std::size_t write_hmap_file(const HeuristicMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    return write_hmap(map, out);
}

inline HmapReadResult read_hmap(std::istream& in, HmapReadOptions options = {}) {
    std::array<unsigned char, kHmapHeaderSize> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() != static_cast<std::streamsize>(header.size())) throw FormatError("hmap: truncated header");
    if (std::memcmp(header.data(), kHmapMagic.data(), 4) != 0) throw FormatError("hmap: bad magic");
    const auto version = detail::get_u32(header.data() + 4);
    if (version != kHmapVersion) throw FormatError("hmap: unsupported version " + std::to_string(version));
    const auto kind_byte = header[8];
    if (kind_byte > 2) throw FormatError("hmap: unknown kind " + std::to_string(kind_byte));
    if (header[9] != 0 || header[10] != 0 || header[11] != 0) throw FormatError("hmap: reserved bytes not zero");
    const auto height = detail::get_u32(header.data() + 12);
    const auto width = detail::get_u32(header.data() + 16);
    if (height == 0 || width == 0 || height > (1u << 16) || width > (1u << 16)) {
        throw FormatError("hmap: bad dimensions");
    }
    const auto kind = static_cast<HeuristicKind>(kind_byte);
    const std::size_t count = static_cast<std::size_t>(height) * width;

    std::vector<unsigned char> payload(4 * count);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (in.gcount() != static_cast<std::streamsize>(payload.size())) throw FormatError("hmap: truncated payload");
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("hmap: trailing bytes after payload");

    std::vector<float> values(count);
    std::size_t clamped = 0;
    const double tol = kHmapRangeTolerance;
    for (std::size_t i = 0; i < count; ++i) {
        float v = std::bit_cast<float>(detail::get_u32(payload.data() + 4 * i));
        if (!std::isfinite(v)) throw FormatError("hmap: non-finite value at index " + std::to_string(i));
        const double d = v;
        switch (kind) {
            case HeuristicKind::CF:
                if (d < -tol || d > 1.0 + tol) throw RangeError("hmap: cf value out of [0,1]");
                v = std::clamp(v, 0.0f, 1.0f);
                break;
            case HeuristicKind::PP:
                if (d < -tol || d > 1.0 + tol) throw RangeError("hmap: pp value out of [0,1]");
                v = std::clamp(v, 0.0f, 1.0f);
                if (!options.raw_pp && v > 0.0f && d < kPathProbabilityCut - tol) {
                    v = 0.0f;
                    ++clamped;
                }
                break;
            case HeuristicKind::ABS:
                if (d < -tol) throw RangeError("hmap: negative cost-to-go");
                v = std::max(v, 0.0f);
                break;
        }
        values[i] = v;
    }
    return {HeuristicMap(kind, static_cast<int>(height), static_cast<int>(width), std::move(values)), clamped};
}

inline HmapReadResult read_hmap_file(const std::filesystem::path& path, HmapReadOptions options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path.string());
    return read_hmap(in, options);
}

}  // namespace gridpath
