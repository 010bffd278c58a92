#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ccspace {

/// One SplitMix64 step: advances `state` by the golden-ratio increment and returns the
/// finalized 64-bit output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Order-sensitive seed combination: state = splitmix64 over (state XOR value) for each
/// value in turn, starting from the first value.
std::uint64_t combine_seeds(std::initializer_list<std::uint64_t> values) noexcept;

/// Portable random source: std::mt19937_64 (bit-exact across standard libraries) seeded with
/// the 64-bit seed, plus distribution code defined here rather than by the standard library,
/// whose distributions are implementation-specific.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound) by rejection of the biased low range. bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

private:
    std::mt19937_64 engine_;
};

}  // namespace ccspace
