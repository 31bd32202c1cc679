#include "dnastore/genie.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace dnastore {

void TaggedPool::validate() const {
    pool.validate();
    if (tags.size() != pool.molecules.size())
        throw DomainError("tagged pool: one tag per molecule");
    std::vector<std::uint64_t> sorted = tags;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i)
            throw DomainError("tagged pool: tags must be exactly {0..M-1}");
}

TaggedPool tag_pool(const MoleculePool& pool) {
    pool.validate();
    TaggedPool t{pool, {}};
    t.tags.resize(pool.molecules.size());
    for (std::size_t i = 0; i < t.tags.size(); ++i)
        t.tags[i] = i;
    return t;
}

SampleSet sample_tagged(const TaggedPool& tagged, std::uint64_t seed) {
    tagged.validate();
    const ChannelParams& p = tagged.pool.params;
    SampleSet out;
    out.params = p;
    out.draws.reserve(p.draw_count);
    out.tags.reserve(p.draw_count);
    for (std::uint64_t i : draw_indices(p.molecule_count, p.draw_count, seed)) {
        out.draws.push_back(tagged.pool.molecules[i]);
        out.tags.push_back(tagged.tags[i]);
    }
    return out;
}

std::vector<TaggedDraw> dedup_set(const SampleSet& samples) {
    samples.validate();
    if (!samples.tagged())
        throw ContractError("dedup_set: samples must carry genie tags");
    std::set<TaggedDraw> uniq;
    for (std::size_t i = 0; i < samples.draws.size(); ++i)
        uniq.insert(TaggedDraw{samples.draws[i], samples.tags[i]});
    return std::vector<TaggedDraw>(uniq.begin(), uniq.end());
}

std::uint64_t FrequencyVector::l1_norm() const {
    std::uint64_t sum = 0;
    for (const auto& [mol, count] : counts)
        sum += count;
    return sum;
}

FrequencyVector frequency_vector(const SampleSet& samples) {
    FrequencyVector f;
    f.params = samples.params;
    for (const TaggedDraw& d : dedup_set(samples))
        ++f.counts[d.molecule];
    return f;
}

AugmentedFrequencyVector augment(FrequencyVector f, double delta) {
    const double ec = std::exp(-f.params.coverage);
    if (!(delta > 0.0) || delta > ec)
        throw DomainError("augment: delta must lie in (0, e^{-c}]");
    const double threshold =
        (1.0 - ec + delta) * static_cast<double>(f.params.molecule_count);
    const double l1 = static_cast<double>(f.l1_norm());
    AugmentedFrequencyVector out;
    out.delta = delta;
    out.f0 = threshold - l1;
    out.event_e = l1 > threshold;
    out.f = std::move(f);
    return out;
}

std::string serialize(const FrequencyVector& f) {
    std::ostringstream out;
    out << "# M=" << f.params.molecule_count << " L=" << f.params.molecule_bits
        << " N=" << f.params.draw_count << " Q=" << f.l1_norm() << "\n";
    // std::map keys are already in bitwise lexicographic order.
    for (const auto& [mol, count] : f.counts)
        out << mol.to_hex() << " " << count << "\n";
    return out.str();
}

} // namespace dnastore
