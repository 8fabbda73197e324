#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace mimod2d {

/// SplitMix64 step; used to derive independent generator states.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** by Blackman and Vigna. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_positive() { return 1.0 - uniform(); }

private:
    std::uint64_t s_[4];
};

/// Generator for (master_seed, stream, counter). Different triples give
/// statistically independent sequences; the same triple always gives the
/// same one, so work can be split across threads in any order.
Xoshiro256 substream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t counter);

double sample_exponential(Xoshiro256& rng);

/// Gamma(shape, 1) for integer shape >= 1, as a sum of exponentials.
double sample_gamma_integer(Xoshiro256& rng, int shape);

/// Two independent N(0, 1) draws (Box-Muller).
std::pair<double, double> sample_normal_pair(Xoshiro256& rng);

}  // namespace mimod2d
