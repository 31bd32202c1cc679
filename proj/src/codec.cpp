#include "dnastore/codec.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "dnastore/gf.hpp"

namespace dnastore {

unsigned CodecConfig::index_bits() const {
    unsigned bits = 0;
    while ((1ull << bits) < molecule_count)
        ++bits;
    return bits;
}

void CodecConfig::validate() const {
    if (molecule_count < 2 || (molecule_count & (molecule_count - 1)) != 0)
        throw ConfigError("codec config: M must be a power of two >= 2");
    if (field_bits < 1)
        throw ConfigError("codec config: w must be >= 1");
    if ((1ull << field_bits) <= molecule_count)
        throw ConfigError("codec config: 2^w <= M, not enough evaluation points");
    if (molecule_bits <= index_bits())
        throw ConfigError("codec config: L must exceed log2(M) index bits");
    if (payload_bits() < field_bits)
        throw ConfigError("codec config: payload must be at least w bits");
    if (information_count < 1 || information_count > molecule_count)
        throw ConfigError("codec config: k must lie in [1, M]");
    payload_columns(*this); // validates the tail column width
}

CodecConfig make_codec_config(std::uint64_t molecule_count, std::uint32_t molecule_bits,
                              unsigned field_bits, std::uint64_t information_count) {
    CodecConfig c{molecule_count, molecule_bits, field_bits, information_count};
    c.validate();
    return c;
}

CodecConfig codec_config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    for (const char* key : {"M", "L", "w", "k"})
        if (!j.contains(key))
            throw FormatError(std::string("codec config: missing field ") + key);
    return make_codec_config(j.at("M").get<std::uint64_t>(),
                             j.at("L").get<std::uint32_t>(),
                             j.at("w").get<unsigned>(),
                             j.at("k").get<std::uint64_t>());
}

std::string codec_config_to_json(const CodecConfig& config) {
    nlohmann::json j;
    j["M"] = config.molecule_count;
    j["L"] = config.molecule_bits;
    j["w"] = config.field_bits;
    j["k"] = config.information_count;
    return j.dump();
}

std::vector<ColumnSpec> payload_columns(const CodecConfig& config) {
    if (config.molecule_bits <= config.index_bits())
        throw ConfigError("codec config: L must exceed log2(M) index bits");
    std::vector<ColumnSpec> cols;
    const unsigned payload = config.payload_bits();
    unsigned offset = 0;
    while (payload - offset >= config.field_bits) {
        cols.push_back({offset, config.field_bits});
        offset += config.field_bits;
    }
    if (offset < payload) {
        const unsigned tail = payload - offset;
        if ((1ull << tail) <= config.molecule_count)
            throw ConfigError(
                "codec config: tail column of " + std::to_string(tail) +
                " bits cannot host M evaluation points (2^tail <= M); choose w so "
                "that w divides the payload or leaves a wider tail");
        cols.push_back({offset, tail});
    }
    return cols;
}

namespace {

// Writes `width` bits of `value` big-endian at payload bit `offset` of
// molecule `m` (payload starts after the index prefix).
void put_symbol(Molecule& m, unsigned index_bits, unsigned offset, unsigned width,
                std::uint32_t value) {
    for (unsigned i = 0; i < width; ++i)
        m.set_bit(index_bits + offset + i, (value >> (width - 1 - i)) & 1u);
}

std::uint32_t get_symbol(const Molecule& m, unsigned index_bits, unsigned offset,
                         unsigned width) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < width; ++i)
        v = (v << 1) | (m.bit(index_bits + offset + i) ? 1u : 0u);
    return v;
}

// Barycentric weights w_j = 1 / prod_{i != j} (x_j - x_i) for the support
// points. In GF(2^w) the difference is xor.
std::vector<std::uint32_t> barycentric_weights(const Field& field,
                                               const std::vector<std::uint32_t>& support) {
    std::vector<std::uint32_t> weights(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
        std::uint32_t prod = 1;
        for (std::size_t i = 0; i < support.size(); ++i)
            if (i != j)
                prod = field.mul(prod, support[j] ^ support[i]);
        weights[j] = field.inv(prod);
    }
    return weights;
}

// Evaluates the unique degree-(|support|-1) interpolant of
// (support[j], values[j]) at z. z must not be a support point.
std::uint32_t interpolate_at(const Field& field, const std::vector<std::uint32_t>& support,
                             const std::vector<std::uint32_t>& weights,
                             const std::vector<std::uint32_t>& values, std::uint32_t z) {
    std::uint32_t master = 1; // N(z) = prod (z - x_j)
    for (std::uint32_t x : support)
        master = field.mul(master, z ^ x);
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < support.size(); ++j) {
        const std::uint32_t term =
            field.mul(field.mul(values[j], weights[j]), field.inv(z ^ support[j]));
        acc ^= term;
    }
    return field.mul(master, acc);
}

std::uint64_t payload_capacity_bits(const CodecConfig& config) {
    return config.information_count * static_cast<std::uint64_t>(config.payload_bits());
}

} // namespace

MoleculePool encode(std::span<const std::uint8_t> data, const CodecConfig& config) {
    config.validate();
    const std::uint64_t capacity_bits = payload_capacity_bits(config);
    if (capacity_bits < 32 || data.size() * 8ull > capacity_bits - 32)
        throw CapacityError("encode: data does not fit k*payload_bits - 32 bits");

    const unsigned index_bits = config.index_bits();
    const unsigned payload = config.payload_bits();
    const std::uint64_t m = config.molecule_count;
    const std::uint64_t k = config.information_count;

    // Information payload stream: 32-bit big-endian byte count, data bytes,
    // zero padding up to k*payload bits.
    auto stream_bit = [&](std::uint64_t pos) -> bool {
        if (pos < 32)
            return (static_cast<std::uint32_t>(data.size()) >> (31 - pos)) & 1u;
        const std::uint64_t dbit = pos - 32;
        if (dbit < data.size() * 8ull)
            return (data[dbit / 8] >> (7 - dbit % 8)) & 1u;
        return false;
    };

    std::vector<Molecule> molecules;
    molecules.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        Molecule mol(config.molecule_bits);
        for (unsigned b = 0; b < index_bits; ++b)
            mol.set_bit(b, (i >> (index_bits - 1 - b)) & 1u);
        molecules.push_back(std::move(mol));
    }
    for (std::uint64_t i = 0; i < k; ++i)
        for (unsigned b = 0; b < payload; ++b)
            molecules[i].set_bit(index_bits + b, stream_bit(i * payload + b));

    // Parity: per column, evaluate the interpolant through the k information
    // symbols at the remaining M - k points.
    std::vector<std::uint32_t> support(k);
    for (std::uint64_t j = 0; j < k; ++j)
        support[j] = static_cast<std::uint32_t>(j);
    std::map<unsigned, std::vector<std::uint32_t>> weight_cache; // by field width
    for (const ColumnSpec& col : payload_columns(config)) {
        const Field& field = Field::get(col.width);
        auto cached = weight_cache.find(col.width);
        if (cached == weight_cache.end())
            cached = weight_cache.emplace(col.width, barycentric_weights(field, support))
                         .first;
        const auto& weights = cached->second;
        std::vector<std::uint32_t> values(k);
        for (std::uint64_t j = 0; j < k; ++j)
            values[j] = get_symbol(molecules[j], index_bits, col.bit_offset, col.width);
        for (std::uint64_t z = k; z < m; ++z) {
            const std::uint32_t v = interpolate_at(field, support, weights, values,
                                                   static_cast<std::uint32_t>(z));
            put_symbol(molecules[z], index_bits, col.bit_offset, col.width, v);
        }
    }

    const double log2m = std::log2(static_cast<double>(m));
    ChannelParams params{m, config.molecule_bits,
                         static_cast<double>(config.molecule_bits) / log2m, 1.0, m};
    return MoleculePool{params, std::move(molecules)};
}

std::vector<std::uint8_t> decode(const std::vector<Molecule>& samples,
                                 const CodecConfig& config) {
    config.validate();
    const unsigned index_bits = config.index_bits();
    const unsigned payload = config.payload_bits();
    const std::uint64_t k = config.information_count;

    // Dedup by in-band position. The channel is noiseless: disagreeing
    // duplicates mean the input is corrupt, not that we should vote.
    std::map<std::uint64_t, const Molecule*> by_position;
    for (const Molecule& s : samples) {
        if (s.bit_size() != config.molecule_bits)
            throw FormatError("decode: sample length differs from config L");
        const std::uint64_t pos = s.prefix_value(index_bits);
        auto [it, inserted] = by_position.emplace(pos, &s);
        if (!inserted && !(*it->second == s))
            throw CorruptionDetected("decode: duplicate position " + std::to_string(pos) +
                                     " with conflicting contents");
    }
    if (by_position.size() < k)
        throw InsufficientCoverage(
            k - by_position.size(),
            "decode: " + std::to_string(by_position.size()) + " distinct positions, need " +
                std::to_string(k) + " (deficit " +
                std::to_string(k - by_position.size()) + ")");

    // Support = the k smallest covered positions (deterministic choice).
    std::vector<std::uint32_t> support;
    std::vector<const Molecule*> support_mols;
    support.reserve(k);
    for (auto it = by_position.begin(); support.size() < k; ++it) {
        support.push_back(static_cast<std::uint32_t>(it->first));
        support_mols.push_back(it->second);
    }

    std::vector<std::uint64_t> missing_info;
    for (std::uint64_t i = 0; i < k; ++i)
        if (!by_position.count(i))
            missing_info.push_back(i);

    // Reconstruct the information symbol matrix column by column.
    std::vector<std::vector<std::uint32_t>> info_symbols; // per column, size k
    const auto columns = payload_columns(config);
    info_symbols.resize(columns.size());
    std::map<unsigned, std::vector<std::uint32_t>> weight_cache; // by field width
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const ColumnSpec& col = columns[c];
        auto& symbols = info_symbols[c];
        symbols.assign(k, 0);
        for (std::uint64_t i = 0; i < k; ++i) {
            auto it = by_position.find(i);
            if (it != by_position.end())
                symbols[i] = get_symbol(*it->second, index_bits, col.bit_offset, col.width);
        }
        if (missing_info.empty())
            continue; // systematic part fully covered, no interpolation work
        const Field& field = Field::get(col.width);
        auto cached = weight_cache.find(col.width);
        if (cached == weight_cache.end())
            cached = weight_cache.emplace(col.width, barycentric_weights(field, support))
                         .first;
        const auto& weights = cached->second;
        std::vector<std::uint32_t> values(k);
        for (std::uint64_t j = 0; j < k; ++j)
            values[j] = get_symbol(*support_mols[j], index_bits, col.bit_offset, col.width);
        for (std::uint64_t z : missing_info)
            symbols[z] = interpolate_at(field, support, weights, values,
                                        static_cast<std::uint32_t>(z));
    }

    // Reassemble the payload stream and strip the length header.
    auto stream_bit = [&](std::uint64_t pos) -> bool {
        const std::uint64_t mol = pos / payload;
        const unsigned bit = static_cast<unsigned>(pos % payload);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const ColumnSpec& col = columns[c];
            if (bit >= col.bit_offset && bit < col.bit_offset + col.width)
                return (info_symbols[c][mol] >> (col.width - 1 - (bit - col.bit_offset))) & 1u;
        }
        return false; // unreachable: columns tile the payload
    };

    const std::uint64_t capacity_bits = payload_capacity_bits(config);
    if (capacity_bits < 32)
        throw FormatError("decode: k*payload too small to hold the length header");
    std::uint32_t byte_count = 0;
    for (unsigned i = 0; i < 32; ++i)
        byte_count = (byte_count << 1) | (stream_bit(i) ? 1u : 0u);
    if (static_cast<std::uint64_t>(byte_count) * 8ull > capacity_bits - 32)
        throw FormatError("decode: length header exceeds payload capacity");

    std::vector<std::uint8_t> out(byte_count, 0);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(byte_count) * 8ull; ++i)
        if (stream_bit(32 + i))
            out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    return out;
}

std::vector<std::uint8_t> decode(const SampleSet& samples, const CodecConfig& config) {
    return decode(samples.draws, config);
}

double achieved_rate(const CodecConfig& config) {
    config.validate();
    return static_cast<double>(config.information_count) *
           static_cast<double>(config.payload_bits()) /
           (static_cast<double>(config.molecule_count) *
            static_cast<double>(config.molecule_bits));
}

std::uint64_t suggested_information_count(std::uint64_t molecule_count, double c) {
    if (molecule_count < 2)
        throw DomainError("suggested_information_count: M must be >= 2");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("suggested_information_count: c must be finite and > 0");
    const double m = static_cast<double>(molecule_count);
    const double p = std::exp(-c);
    const double mean = (1.0 - p) * m;
    const double sigma = std::sqrt(m * p * (1.0 - p));
    const double k = std::floor(mean - 3.0 * sigma);
    if (k < 1.0)
        return 1;
    if (k > m)
        return molecule_count;
    return static_cast<std::uint64_t>(k);
}

} // namespace dnastore
