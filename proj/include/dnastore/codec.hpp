#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dnastore/channel.hpp"

namespace dnastore {

// Index-based coding scheme. Molecule i = its position i as a big-endian
// index_bits prefix, followed by payload_bits of data or parity. The index
// prefix turns unordered sampling into an erasure channel; a systematic MDS
// outer code (Lagrange evaluation, information symbols at points 0..k-1)
// recovers everything from any k distinct molecules.
struct CodecConfig {
    std::uint64_t molecule_count = 0;   // M, a power of two
    std::uint32_t molecule_bits = 0;    // L
    unsigned field_bits = 0;            // w
    std::uint64_t information_count = 0; // k

    unsigned index_bits() const;
    unsigned payload_bits() const { return molecule_bits - index_bits(); }
    unsigned symbols_per_molecule() const {
        return (payload_bits() + field_bits - 1) / field_bits;
    }

    void validate() const;
};

CodecConfig make_codec_config(std::uint64_t molecule_count, std::uint32_t molecule_bits,
                              unsigned field_bits, std::uint64_t information_count);

// JSON document {"M":..,"L":..,"w":..,"k":..}; derived quantities are never
// stored.
CodecConfig codec_config_from_json(const std::string& text);
std::string codec_config_to_json(const CodecConfig& config);

// The payload splits into symbols_per_molecule columns: full field_bits-wide
// columns plus, when field_bits does not divide payload_bits, one tail
// column of the remaining width coded over the correspondingly narrower
// field (its order must still exceed M).
struct ColumnSpec {
    unsigned bit_offset; // within the payload
    unsigned width;      // field width of this column
};
std::vector<ColumnSpec> payload_columns(const CodecConfig& config);

// data | 32-bit big-endian length header, zero-padded, spread over the
// payloads of molecules 0..k-1; parities fill molecules k..M-1.
MoleculePool encode(std::span<const std::uint8_t> data, const CodecConfig& config);

// Recovers the original bytes from any sample set that covers >= k distinct
// positions. Duplicate positions must agree bitwise. Tags are not needed:
// the index is in band.
std::vector<std::uint8_t> decode(const std::vector<Molecule>& samples,
                                 const CodecConfig& config);
std::vector<std::uint8_t> decode(const SampleSet& samples, const CodecConfig& config);

// k * payload_bits / (M * L).
double achieved_rate(const CodecConfig& config);

// Mean-minus-three-sigma rule for picking k at coverage depth c:
// floor((1 - e^{-c}) M - 3 sqrt(M e^{-c}(1 - e^{-c}))), clamped to [1, M].
std::uint64_t suggested_information_count(std::uint64_t molecule_count, double c);

} // namespace dnastore
