#pragma once

#include <cstdint>
#include <vector>

namespace cvbench {

// Fixed 64-bit PRNG used everywhere randomness is needed. This is
// splitmix64 (Steele, Lea & Flood 2014; public domain reference by
// Sebastiano Vigna). The stream is part of the on-disk contract: fold
// assignments and forest resamples must be bit-identical across
// platforms, so no std::mt19937 or libc rand anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) by rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    double next_unit() {  // uniform in [0,1) with 53 random bits
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Deterministic seed derivation for (index...) subtasks of a base seed.
// Each index is absorbed through one splitmix64 step.
inline std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices) {
    std::uint64_t s = base;
    for (std::uint64_t idx : indices) {
        SplitMix64 g(s ^ (idx + 0x9e3779b97f4a7c15ULL));
        s = g.next();
    }
    return s;
}

// In-place Fisher-Yates shuffle driven by the generator above.
template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace cvbench
