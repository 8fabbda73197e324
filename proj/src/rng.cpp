#include "mimod2d/rng.hpp"

#include <cmath>
#include <numbers>

namespace mimod2d {
namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed)
{
    for (auto& word : s_) word = splitmix64(seed);
}

Xoshiro256::result_type Xoshiro256::operator()()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

Xoshiro256 substream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t counter)
{
    std::uint64_t state = master_seed;
    std::uint64_t key = splitmix64(state);
    state = key ^ stream;
    key = splitmix64(state);
    state = key ^ counter;
    return Xoshiro256(splitmix64(state));
}

double sample_exponential(Xoshiro256& rng) { return -std::log(rng.uniform_positive()); }

double sample_gamma_integer(Xoshiro256& rng, int shape)
{
    // -log of a product of uniforms, flushed before it can underflow.
    double total = 0.0;
    double product = 1.0;
    for (int i = 0; i < shape; ++i) {
        product *= rng.uniform_positive();
        if (product < 1e-280) {
            total -= std::log(product);
            product = 1.0;
        }
    }
    return total - std::log(product);
}

std::pair<double, double> sample_normal_pair(Xoshiro256& rng)
{
    const double radius = std::sqrt(-2.0 * std::log(rng.uniform_positive()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace mimod2d
