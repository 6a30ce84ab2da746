#pragma once

#include <cstdint>
#include <limits>

#include "tbembed/bit_matrix.hpp"

namespace tbembed {

// SplitMix64: the output is a bijective mix of a Weyl counter.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(state_ += 0x9e3779b97f4a7c15ull); }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Seed for sub-stream `index` of a run seeded with `seed`.
    static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull));
    }

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do x = (*this)(); while (x >= limit);
        return x % bound;
    }

    algebra::BitVector bits(std::size_t length) {
        algebra::BitVector v(length);
        auto w = v.words();
        for (auto& x : w) x = (*this)();
        if (length & 63) w.back() &= (std::uint64_t{1} << (length & 63)) - 1;
        return v;
    }

private:
    std::uint64_t state_;
};

}  // namespace tbembed
