#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

// =============================================================================
// Seedable PRNG for reproducible experiments.
//
// Stream generator: xoshiro256++ seeded through splitmix64. Transforms
// (uniform, gaussian, sign) are written out explicitly instead of relying on
// <random> distributions, whose output is implementation-defined; a given
// seed therefore produces one sequence everywhere this code compiles.
//
// Seed derivation builds a tree: master seed -> per-trial seed -> named
// sub-streams ("cloud", "gaussian-sketch", ...). Labels are hashed with
// FNV-1a and mixed through the splitmix64 finalizer, so adding one more
// consumer never perturbs the streams of existing ones.
// =============================================================================

namespace gpembed {

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t h = detail::mix64(parent ^ detail::fnv1a64(label));
    return detail::mix64(h ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64_next(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired value is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 on (0, 1] so log() stays finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    // Fair +/-1.
    double next_sign() {
        return (next_u64() >> 63) ? 1.0 : -1.0;
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace gpembed
