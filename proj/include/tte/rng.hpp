#pragma once

#include <cstdint>
#include <limits>

namespace tte::rng {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator, used only to expand seeds into xoshiro state.
class SplitMix64
{
  public:
    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    constexpr std::uint64_t operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

  private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman and Vigna), a UniformRandomBitGenerator.
class Xoshiro256StarStar
{
  public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256StarStar(std::uint64_t seed)
    {
        SplitMix64 seeder(seed);
        for (auto& word : state_)
            word = seeder();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()()
    {
        result_type const result = rotl(state_[1] * 5, 7) * 9;
        result_type const t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

/// Independent stream for one replication. The stream depends only on the
/// (seed, index) pair, never on which thread runs the replication.
inline Xoshiro256StarStar replication_stream(std::uint64_t seed,
                                             std::uint64_t index)
{
    return Xoshiro256StarStar(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform variate on (0, 1] with 53 random bits.
inline double uniform_open_closed(Xoshiro256StarStar& gen)
{
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace tte::rng
