#pragma once

#include <cstdint>

namespace dnastore {

// Finalizer of the splitmix64 generator; also used as the fixed mixing
// function for deriving per-trial sub-seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Seedable 64-bit-state generator (splitmix64). Chosen for reproducibility:
// the whole repository pins this generator, its seeding, and its bounded-draw
// scheme, so identical seeds give identical results on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Unbiased draw from [0, n) by rejection sampling: values below
    // 2^64 mod n are rejected so every residue is equally likely.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t r;
        do {
            r = next();
        } while (r < threshold);
        return r % n;
    }

private:
    std::uint64_t state_;
};

// Deterministic sub-seed for trial (or stream) `index` of a run seeded with
// `seed`. Trials seeded this way are independent of scheduling order.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

} // namespace dnastore
