#pragma once

#include <cstdint>
#include <random>

namespace qsim {

/// Seeded pseudorandom source for measurement sampling. Identical seeds give
/// identical draw sequences on every platform; draws are derived from raw
/// mt19937_64 output rather than std distributions, whose streams are
/// implementation-defined.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampled, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace qsim
