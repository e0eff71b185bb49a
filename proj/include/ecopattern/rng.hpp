#pragma once

// Seedable noise with a platform-independent bit stream: mt19937_64 raw draws
// mapped to uniforms by hand and a hand-rolled Box-Muller, so realizations
// never depend on the standard library's distribution implementations.

#include <cmath>
#include <cstdint>
#include <random>

namespace eco {

class NoiseGen {
  public:
    explicit NoiseGen(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0,1) with 53 random bits
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// Stable per-job seed derivation (splitmix64 over the base seed and index),
// so a sweep's noise realizations are independent of worker partitioning.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t job_index) {
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ull * (job_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace eco
