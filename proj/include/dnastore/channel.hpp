#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dnastore/errors.hpp"

namespace dnastore {

// The tuple (M, L, beta, c, N) with L = round(beta*log2 M) and
// N = round(c*M). Rounding is half-up; beta and c keep their given values so
// they can be recovered within one rounding quantum.
struct ChannelParams {
    std::uint64_t molecule_count = 0; // M
    std::uint32_t molecule_bits = 0;  // L
    double beta = 0.0;                // L = beta * log2(M)
    double coverage = 0.0;            // c, N = c * M
    std::uint64_t draw_count = 0;     // N

    void validate() const;
};

ChannelParams derive_params(std::uint64_t molecule_count, double beta, double coverage);

// Builds consistent params from explicit counts (beta and c are recomputed
// exactly). Pool files store only M and L, so readers rebuild params here.
ChannelParams params_from_counts(std::uint64_t molecule_count,
                                 std::uint32_t molecule_bits,
                                 std::uint64_t draw_count);

// Same pool, different coverage depth: re-derives N = round(c*M).
ChannelParams with_coverage(const ChannelParams& params, double coverage);

// A fixed-length bit string, packed MSB-first within each byte with a
// zero-padded tail. Equality and ordering are bitwise.
class Molecule {
public:
    Molecule() = default;
    explicit Molecule(std::uint32_t bit_size)
        : bit_size_(bit_size), bytes_((bit_size + 7) / 8, 0) {}

    // Low `bit_size` bits of `value`, most significant first, so the whole
    // molecule read as a big-endian integer equals `value`.
    static Molecule from_value(std::uint64_t value, std::uint32_t bit_size);

    std::uint32_t bit_size() const { return bit_size_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    bool bit(std::uint32_t i) const {
        return (bytes_[i / 8] >> (7 - (i % 8))) & 1u;
    }
    void set_bit(std::uint32_t i, bool v) {
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i % 8)));
        if (v)
            bytes_[i / 8] |= mask;
        else
            bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
    }

    // Leading `nbits` bits as a big-endian integer (nbits <= 64).
    std::uint64_t prefix_value(std::uint32_t nbits) const;

    // Lowercase hex of the packed bytes; equal-length molecules compare the
    // same way as their hex strings.
    std::string to_hex() const;

    friend bool operator==(const Molecule&, const Molecule&) = default;
    friend std::strong_ordering operator<=>(const Molecule& a, const Molecule& b) {
        if (auto c = a.bit_size_ <=> b.bit_size_; c != 0)
            return c;
        return a.bytes_ <=> b.bytes_;
    }

private:
    std::uint32_t bit_size_ = 0;
    std::vector<std::uint8_t> bytes_;
};

// Ordered multiset of exactly M length-L molecules (duplicates permitted).
struct MoleculePool {
    ChannelParams params;
    std::vector<Molecule> molecules;

    void validate() const;
};

MoleculePool make_pool(ChannelParams params, std::vector<Molecule> molecules);

// Pool with molecule i = the integer i (requires L >= bits needed for M-1);
// contents are pairwise distinct.
MoleculePool sequential_pool(const ChannelParams& params);

// Pool of uniformly random bit contents. Duplicates are possible and legal.
MoleculePool random_pool(const ChannelParams& params, std::uint64_t seed);

// N draws from the channel. Tags are absent unless the set was produced by
// the genie-aided channel, in which case tags has one entry per draw.
struct SampleSet {
    ChannelParams params;
    std::vector<Molecule> draws;
    std::vector<std::uint64_t> tags;

    bool tagged() const { return !tags.empty(); }
    void validate() const;
};

// The channel: N = params.draw_count independent uniform draws (with
// replacement) from the pool. Pure function of (pool, seed).
SampleSet sample_with_replacement(const MoleculePool& pool, std::uint64_t seed);

// The raw index stream behind sampling; exposed so the tagged (genie) channel
// can share it bit-for-bit with the untagged one.
std::vector<std::uint64_t> draw_indices(std::uint64_t molecule_count,
                                        std::uint64_t draw_count,
                                        std::uint64_t seed);

// Mean fraction of pool indices never drawn, over `trials` independent
// sample sets (trial t is seeded with derive_stream_seed(seed, t)).
// Bookkeeping is per index; the pool must be pairwise distinct so "not
// sampled" is unambiguous per molecule.
double empirical_erasure_probability(const MoleculePool& pool,
                                     std::uint64_t trials,
                                     std::uint64_t seed,
                                     unsigned threads = 0);

// (1 - 1/M)^N evaluated stably via log1p.
double analytic_erasure_probability(std::uint64_t molecule_count, std::uint64_t draw_count);

} // namespace dnastore
