#include "ccspace/rng.hpp"

namespace ccspace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t combine_seeds(std::initializer_list<std::uint64_t> values) noexcept {
    std::uint64_t state = 0;
    std::uint64_t out = 0;
    for (std::uint64_t v : values) {
        state ^= v;
        out = splitmix64(state);
        state = out;
    }
    return out;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Values under 2^64 mod bound would make the low residues more likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace ccspace
