#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#define ORGSIM_VERSION "0.1.0"

namespace orgsim {

// Invalid parameter combination; carries the name of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Full organization-wide decision vector. Task i lives at bit i, agent p owns
// bits [p*N, (p+1)*N). Capped at 64 tasks.
using DecisionVector = std::uint64_t;

inline std::uint64_t bit_mask(int n_bits) {
    return n_bits >= 64 ? ~0ULL : ((1ULL << n_bits) - 1);
}

inline std::uint32_t block_bits(DecisionVector x, int agent, int n) {
    return static_cast<std::uint32_t>((x >> (agent * n)) & bit_mask(n));
}

inline DecisionVector with_block(DecisionVector x, int agent, int n, std::uint32_t bits) {
    const DecisionVector mask = bit_mask(n) << (agent * n);
    return (x & ~mask) | (DecisionVector{bits} << (agent * n));
}

// Lexicographic order on bit vectors read task 0 first (0 sorts before 1).
inline bool lex_less(DecisionVector a, DecisionVector b) {
    const DecisionVector diff = a ^ b;
    if (diff == 0) return false;
    return ((a >> std::countr_zero(diff)) & 1ULL) == 0;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small counter-based generator; used for per-(agent, period) draw streams so
// results do not depend on the order agents are evaluated in.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

}  // namespace orgsim
