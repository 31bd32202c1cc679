#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dnastore/channel.hpp"

namespace dnastore {

// Binary pool format ("DNAP"), little-endian integers:
//   magic "DNAP" | version 0x01 | M (8 bytes) | L (4 bytes) |
//   ceil(M*L/8) bytes of molecule bits, concatenated in order, MSB-first
//   within each byte, zero-padded at the tail of the stream.
//
// Sample format ("DNAS") is the same with the count field holding N, plus a
// 1-byte tag-presence flag after L. Without tags the bits are packed exactly
// like a pool. With tags each record is byte-aligned: ceil(L/8) bytes of
// molecule bits followed by the tag as an 8-byte integer. Coverage depth and
// M are channel properties, not sample-file properties; readers of "DNAS"
// recover them from context (e.g. the codec config).

std::vector<std::uint8_t> serialize_pool(const MoleculePool& pool);
void write_pool(const std::filesystem::path& path, const MoleculePool& pool);

// Reads a pool; N is not stored, so params are rebuilt with the given
// coverage depth (default c = 1).
MoleculePool read_pool(const std::filesystem::path& path, double coverage = 1.0);

std::vector<std::uint8_t> serialize_samples(const SampleSet& samples);
void write_samples(const std::filesystem::path& path, const SampleSet& samples);

// Reads records and tags; params are rebuilt nominally (M is not stored).
SampleSet read_samples(const std::filesystem::path& path);

// Writes to a temporary sibling and renames into place, so failures never
// leave a partial output file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

} // namespace dnastore
