#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sepcov {

// Generator identity recorded in output manifests.
inline constexpr const char* kRngName = "mt19937_64+polar";

// Stream-splitting rule (documented so any trial can be regenerated on its
// own): the base seed is mixed with the trial index and a per-matrix role
// tag through SplitMix64, and four of its outputs seed an mt19937_64.
// Uniform doubles come from the top 53 bits; normals from the Marsaglia
// polar method on those uniforms. Everything above is specified exactly,
// so streams are reproducible bit-for-bit given (seed, trial, role) up to
// the platform's libm (sqrt/log) rounding.
enum class StreamRole : std::uint64_t {
    kWigner = 1,      // the Wigner block V of the spatio covariance
    kNoise = 2,       // the N x T Gaussian data matrix / AR innovations
    kSpikeFrame = 3,  // the random orthonormal frame of the spike matrix
    kRates = 4,       // heterogeneous AR(1) decay rates
};

namespace detail {
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};
}  // namespace detail

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trial, StreamRole role) {
        detail::SplitMix64 mix{seed};
        mix.state ^= 0xC2B2AE3D27D4EB4FULL * (trial + 1);
        mix.state ^= 0x165667B19E3779F9ULL * (static_cast<std::uint64_t>(role) + 1);
        const std::uint32_t words[8] = {
            static_cast<std::uint32_t>(mix.next()), static_cast<std::uint32_t>(mix.next() >> 32),
            static_cast<std::uint32_t>(mix.next()), static_cast<std::uint32_t>(mix.next() >> 32),
            static_cast<std::uint32_t>(mix.next()), static_cast<std::uint32_t>(mix.next() >> 32),
            static_cast<std::uint32_t>(mix.next()), static_cast<std::uint32_t>(mix.next() >> 32)};
        std::seed_seq seq(words, words + 8);
        engine_.seed(seq);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via the polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sepcov
