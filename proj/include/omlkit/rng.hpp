#pragma once

#include <cstdint>

namespace oml {

// SplitMix64. Hand-rolled so that seeded runs are byte-identical across
// platforms and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) by rejection, bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit)
            v = next();
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Stable derivation of stream seeds (per trial, per variable) from a master
// seed, so trials can be partitioned without changing their outcomes.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 g(master ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    return g.next();
}

} // namespace oml
