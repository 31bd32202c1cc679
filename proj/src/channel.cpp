#include "dnastore/channel.hpp"

#include <algorithm>
#include <cmath>

#include "dnastore/parallel.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

void ChannelParams::validate() const {
    if (molecule_count < 2)
        throw DomainError("channel params: M must be >= 2");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("channel params: beta must be finite and > 0");
    if (!(coverage > 0.0) || !std::isfinite(coverage))
        throw DomainError("channel params: c must be finite and > 0");
    if (molecule_bits < 1)
        throw DomainError("channel params: L must be >= 1");
    if (draw_count < 1)
        throw DomainError("channel params: N must be >= 1");
    const double log2m = std::log2(static_cast<double>(molecule_count));
    if (std::abs(static_cast<double>(molecule_bits) / log2m - beta) > 1.0 / log2m + 1e-9)
        throw DomainError("channel params: L inconsistent with beta*log2(M)");
    if (std::llround(coverage * static_cast<double>(molecule_count)) !=
        static_cast<long long>(draw_count))
        throw DomainError("channel params: N inconsistent with c*M");
}

ChannelParams derive_params(std::uint64_t molecule_count, double beta, double coverage) {
    if (molecule_count < 2)
        throw DomainError("derive_params: M must be >= 2");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("derive_params: beta must be finite and > 0");
    if (!(coverage > 0.0) || !std::isfinite(coverage))
        throw DomainError("derive_params: c must be finite and > 0");
    const double log2m = std::log2(static_cast<double>(molecule_count));
    const long long l = std::llround(beta * log2m);
    if (l < 1)
        throw DomainError("derive_params: beta*log2(M) rounds to zero molecule bits");
    const long long n = std::llround(coverage * static_cast<double>(molecule_count));
    if (n < 1)
        throw DomainError("derive_params: c*M rounds to zero draws");
    ChannelParams p{molecule_count, static_cast<std::uint32_t>(l), beta, coverage,
                    static_cast<std::uint64_t>(n)};
    p.validate();
    return p;
}

ChannelParams params_from_counts(std::uint64_t molecule_count,
                                 std::uint32_t molecule_bits,
                                 std::uint64_t draw_count) {
    if (molecule_count < 2)
        throw DomainError("params_from_counts: M must be >= 2");
    if (molecule_bits < 1)
        throw DomainError("params_from_counts: L must be >= 1");
    if (draw_count < 1)
        throw DomainError("params_from_counts: N must be >= 1");
    const double log2m = std::log2(static_cast<double>(molecule_count));
    ChannelParams p{molecule_count, molecule_bits,
                    static_cast<double>(molecule_bits) / log2m,
                    static_cast<double>(draw_count) / static_cast<double>(molecule_count),
                    draw_count};
    p.validate();
    return p;
}

ChannelParams with_coverage(const ChannelParams& params, double coverage) {
    if (!(coverage > 0.0) || !std::isfinite(coverage))
        throw DomainError("with_coverage: c must be finite and > 0");
    ChannelParams p = params;
    p.coverage = coverage;
    const long long n = std::llround(coverage * static_cast<double>(params.molecule_count));
    if (n < 1)
        throw DomainError("with_coverage: c*M rounds to zero draws");
    p.draw_count = static_cast<std::uint64_t>(n);
    p.validate();
    return p;
}

Molecule Molecule::from_value(std::uint64_t value, std::uint32_t bit_size) {
    Molecule m(bit_size);
    for (std::uint32_t i = 0; i < bit_size && i < 64; ++i) {
        if ((value >> i) & 1u)
            m.set_bit(bit_size - 1 - i, true);
    }
    return m;
}

std::uint64_t Molecule::prefix_value(std::uint32_t nbits) const {
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < nbits; ++i)
        v = (v << 1) | (bit(i) ? 1u : 0u);
    return v;
}

std::string Molecule::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (std::uint8_t b : bytes_) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

void MoleculePool::validate() const {
    params.validate();
    if (molecules.size() != params.molecule_count)
        throw DomainError("pool: cardinality must equal M");
    for (const Molecule& m : molecules)
        if (m.bit_size() != params.molecule_bits)
            throw DomainError("pool: every molecule must have length L");
}

MoleculePool make_pool(ChannelParams params, std::vector<Molecule> molecules) {
    MoleculePool pool{std::move(params), std::move(molecules)};
    pool.validate();
    return pool;
}

MoleculePool sequential_pool(const ChannelParams& params) {
    params.validate();
    std::uint32_t needed = 0;
    while ((params.molecule_count - 1) >> needed)
        ++needed;
    if (params.molecule_bits < needed)
        throw DomainError("sequential_pool: L too small to hold distinct indices");
    std::vector<Molecule> mols;
    mols.reserve(params.molecule_count);
    for (std::uint64_t i = 0; i < params.molecule_count; ++i)
        mols.push_back(Molecule::from_value(i, params.molecule_bits));
    return MoleculePool{params, std::move(mols)};
}

MoleculePool random_pool(const ChannelParams& params, std::uint64_t seed) {
    params.validate();
    SplitMix64 rng(seed);
    std::vector<Molecule> mols;
    mols.reserve(params.molecule_count);
    for (std::uint64_t i = 0; i < params.molecule_count; ++i) {
        Molecule m(params.molecule_bits);
        std::uint64_t word = 0;
        for (std::uint32_t b = 0; b < params.molecule_bits; ++b) {
            if (b % 64 == 0)
                word = rng.next();
            m.set_bit(b, (word >> (b % 64)) & 1u);
        }
        mols.push_back(std::move(m));
    }
    return MoleculePool{params, std::move(mols)};
}

void SampleSet::validate() const {
    params.validate();
    if (draws.size() != params.draw_count)
        throw DomainError("samples: cardinality must equal N");
    if (!tags.empty() && tags.size() != draws.size())
        throw DomainError("samples: tags, when present, must cover every record");
    for (const Molecule& m : draws)
        if (m.bit_size() != params.molecule_bits)
            throw DomainError("samples: every molecule must have length L");
}

std::vector<std::uint64_t> draw_indices(std::uint64_t molecule_count,
                                        std::uint64_t draw_count,
                                        std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> idx(draw_count);
    for (auto& v : idx)
        v = rng.next_below(molecule_count);
    return idx;
}

SampleSet sample_with_replacement(const MoleculePool& pool, std::uint64_t seed) {
    pool.validate();
    SampleSet out;
    out.params = pool.params;
    out.draws.reserve(pool.params.draw_count);
    for (std::uint64_t i : draw_indices(pool.params.molecule_count, pool.params.draw_count, seed))
        out.draws.push_back(pool.molecules[i]);
    return out;
}

double analytic_erasure_probability(std::uint64_t molecule_count, std::uint64_t draw_count) {
    const double m = static_cast<double>(molecule_count);
    return std::exp(static_cast<double>(draw_count) * std::log1p(-1.0 / m));
}

double empirical_erasure_probability(const MoleculePool& pool,
                                     std::uint64_t trials,
                                     std::uint64_t seed,
                                     unsigned threads) {
    pool.validate();
    if (trials < 1)
        throw DomainError("empirical_erasure_probability: trials must be >= 1");
    {
        std::vector<const Molecule*> sorted;
        sorted.reserve(pool.molecules.size());
        for (const Molecule& m : pool.molecules)
            sorted.push_back(&m);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Molecule* a, const Molecule* b) { return *a < *b; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (*sorted[i - 1] == *sorted[i])
                throw DistinctnessError(
                    "empirical_erasure_probability: pool molecules must be pairwise distinct");
    }

    const std::uint64_t m = pool.params.molecule_count;
    const std::uint64_t n = pool.params.draw_count;
    std::vector<std::uint64_t> unseen(trials);
    parallel_for(
        trials,
        [&](std::size_t t) {
            SplitMix64 rng(derive_stream_seed(seed, t));
            std::vector<std::uint8_t> hit(m, 0);
            for (std::uint64_t d = 0; d < n; ++d)
                hit[rng.next_below(m)] = 1;
            std::uint64_t miss = 0;
            for (std::uint8_t h : hit)
                miss += (h == 0);
            unseen[t] = miss;
        },
        threads);

    double sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t)
        sum += static_cast<double>(unseen[t]) / static_cast<double>(m);
    return sum / static_cast<double>(trials);
}

} // namespace dnastore
