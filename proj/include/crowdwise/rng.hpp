#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace crowdwise {

// All randomness in the library flows through this wrapper so that results
// are reproducible across platforms. The engine is std::mt19937_64 (fully
// specified by the standard, hence portable bit-for-bit) and Gaussians are
// produced by a Box-Muller transform on 53-bit uniforms, because the
// distribution classes in <random> are implementation-defined.
inline constexpr std::string_view kPrngId = "mt19937_64+boxmuller-v1";

// Stream derivation: mixes (seed, stream-index) into an independent engine
// seed. SplitMix64 finalizer, the usual choice for seed whitening.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

    // uniform in [0, 1) with 53 random bits
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), bound > 0; unbiased via rejection
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // standard normal, Box-Muller; second value of each pair is cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace crowdwise
