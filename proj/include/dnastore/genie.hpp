#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dnastore/channel.hpp"

namespace dnastore {

// The converse's genie: every stored molecule gets a unique out-of-band tag
// before sampling, so duplicate contents stay distinguishable at the output.

struct TaggedPool {
    MoleculePool pool;
    std::vector<std::uint64_t> tags; // tag of molecule i; tag_pool assigns i

    void validate() const;
};

// Attaches tag i to molecule i. Contents are unchanged; tags are exactly
// {0, ..., M-1}.
TaggedPool tag_pool(const MoleculePool& pool);

// Sampling with replacement from the tagged pool. Shares the index stream
// with sample_with_replacement: the same (pool, seed) draws the same
// molecules, tags are a pure annotation.
SampleSet sample_tagged(const TaggedPool& tagged, std::uint64_t seed);

struct TaggedDraw {
    Molecule molecule;
    std::uint64_t tag;

    friend bool operator==(const TaggedDraw&, const TaggedDraw&) = default;
    friend auto operator<=>(const TaggedDraw&, const TaggedDraw&) = default;
};

// Distinct (molecule, tag) pairs of a tagged sample set, sorted. Cardinality
// is the coupon count Q with 1 <= Q <= min(M, N).
std::vector<TaggedDraw> dedup_set(const SampleSet& samples);

// Sparse sufficient statistic: observed content -> number of distinct tags
// seen with that content. The dense index set has M^beta entries, so only
// nonzero entries are stored.
struct FrequencyVector {
    ChannelParams params;
    std::map<Molecule, std::uint64_t> counts;

    std::uint64_t l1_norm() const;
};

FrequencyVector frequency_vector(const SampleSet& samples);

struct AugmentedFrequencyVector {
    FrequencyVector f;
    double delta = 0.0;
    double f0 = 0.0;    // (1 - e^{-c} + delta)*M - ||f||_1, kept real-valued
    bool event_e = false; // ||f||_1 > (1 - e^{-c} + delta)*M
};

// Appends the F0 coordinate. Requires 0 < delta <= e^{-c}.
AugmentedFrequencyVector augment(FrequencyVector f, double delta);

// Text form: "# M=<M> L=<L> N=<N> Q=<Q>" then one "hex(bits) count" line per
// key, sorted lexicographically by bit string.
std::string serialize(const FrequencyVector& f);

} // namespace dnastore
