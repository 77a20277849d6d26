#pragma once

#include <cstdint>
#include <string_view>

namespace manetsim {

// 64-bit FNV-1a over a label string. Labels select independent random
// streams, so two streams with different labels never share state even when
// the scenario seed is the same.
inline constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// splitmix64 stream. Cheap, passes the usual statistical batteries, and the
// whole state is one word, which keeps stream derivation trivial.
class RandomStream {
public:
    RandomStream(std::uint64_t scenario_seed, std::string_view label)
        : state_(scenario_seed ^ fnv1a64(label)) {}

    explicit RandomStream(std::uint64_t raw_state) : state_(raw_state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n). n must be positive. Modulo bias is below
    // 2^-40 for every n used here, far under the reproducibility tolerances.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

}  // namespace manetsim
