#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "orgsim/common.hpp"
#include "orgsim/interaction.hpp"
#include "orgsim/landscape.hpp"

namespace orgsim {

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline void put_f64(std::ostream& os, double v) {
    put_u64(os, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    return std::bit_cast<double>(get_u64(is));
}

}  // namespace detail

// Landscape fixture format: header P, N, K, C, S (u32 each), rho (f64),
// seed (u64), all little-endian, followed by the contribution values as
// little-endian f64 in task-major, row-minor order. The seed must be the one
// the interaction matrix was generated from, so a loader can rebuild it.
inline void dump_landscape(const std::string& path, const InteractionMatrix& im,
                           const LandscapeSet& ls, std::uint64_t seed) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dump_landscape: cannot open " + path);
    detail::put_u32(os, static_cast<std::uint32_t>(im.agents));
    detail::put_u32(os, static_cast<std::uint32_t>(im.n));
    detail::put_u32(os, static_cast<std::uint32_t>(im.k));
    detail::put_u32(os, static_cast<std::uint32_t>(im.c));
    detail::put_u32(os, static_cast<std::uint32_t>(im.s));
    detail::put_f64(os, ls.rho);
    detail::put_u64(os, seed);
    for (double v : ls.values) detail::put_f64(os, v);
    if (!os) throw std::runtime_error("dump_landscape: write failed for " + path);
}

struct LoadedLandscape {
    InteractionMatrix im;
    LandscapeSet ls;
    std::uint64_t seed = 0;
};

inline LoadedLandscape load_landscape(const std::string& path, int max_enum_bits = 24) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_landscape: cannot open " + path);

    const int agents = static_cast<int>(detail::get_u32(is));
    const int n = static_cast<int>(detail::get_u32(is));
    const int k = static_cast<int>(detail::get_u32(is));
    const int c = static_cast<int>(detail::get_u32(is));
    const int s = static_cast<int>(detail::get_u32(is));
    const double rho = detail::get_f64(is);
    const std::uint64_t seed = detail::get_u64(is);
    if (!is) throw std::runtime_error("load_landscape: truncated header in " + path);

    LoadedLandscape out;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    out.im = build_interaction_matrix(agents, n, k, c, s, rng);

    out.ls.rho = rho;
    out.ls.row_bits = out.im.row_bits();
    const std::size_t total = static_cast<std::size_t>(out.im.tasks()) * out.ls.rows();
    out.ls.values.resize(total);
    for (std::size_t i = 0; i < total; ++i) out.ls.values[i] = detail::get_f64(is);
    if (!is) throw std::runtime_error("load_landscape: truncated values in " + path);

    const auto [max_value, argmax] = enumerate_global_max(out.ls, out.im, max_enum_bits);
    out.ls.global_max = max_value;
    out.ls.global_argmax = argmax;
    return out;
}

}  // namespace orgsim
