#pragma once

#include <cstdint>

namespace arakelov {

/// SplitMix64 keyed by (seed, stream). Each trial gets its own stream, so
/// draws do not depend on how trials are scheduled across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace arakelov
