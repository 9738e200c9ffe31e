#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace kgforge {

// Seeded RNG with hand-rolled distributions. std::mt19937_64 output is pinned
// by the standard; the derived draws below avoid the implementation-defined
// std::uniform_*_distribution algorithms, so a given seed produces the same
// stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, n) via rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return x % n;
    }

    // Double in [0, 1) with 53 random bits.
    double canonical() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

    bool coin() { return (gen_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace kgforge
