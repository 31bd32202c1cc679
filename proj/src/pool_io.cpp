#include "dnastore/pool_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace dnastore {

namespace {

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint32_t u32le() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64le() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
        return v;
    }
    const std::uint8_t* bytes(std::size_t n) {
        need(n);
        const std::uint8_t* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n)
            throw FormatError("file truncated");
    }
    const std::vector<std::uint8_t>& data_;
    std::size_t pos_ = 0;
};

// Appends `count` molecules as one continuous MSB-first bit stream.
void pack_bits(std::vector<std::uint8_t>& out, const std::vector<Molecule>& mols,
               std::uint32_t bits) {
    std::uint64_t total_bits = static_cast<std::uint64_t>(mols.size()) * bits;
    out.reserve(out.size() + (total_bits + 7) / 8);
    std::uint8_t acc = 0;
    int filled = 0;
    for (const Molecule& m : mols) {
        for (std::uint32_t i = 0; i < bits; ++i) {
            acc = static_cast<std::uint8_t>((acc << 1) | (m.bit(i) ? 1 : 0));
            if (++filled == 8) {
                out.push_back(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
}

std::vector<Molecule> unpack_bits(Reader& r, std::uint64_t count, std::uint32_t bits) {
    const std::uint64_t total_bits = count * bits;
    const std::uint8_t* p = r.bytes((total_bits + 7) / 8);
    std::vector<Molecule> mols;
    mols.reserve(count);
    std::uint64_t pos = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        Molecule m(bits);
        for (std::uint32_t b = 0; b < bits; ++b, ++pos)
            m.set_bit(b, (p[pos / 8] >> (7 - pos % 8)) & 1u);
        mols.push_back(std::move(m));
    }
    return mols;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

} // namespace

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FormatError("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw FormatError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::uint8_t> serialize_pool(const MoleculePool& pool) {
    pool.validate();
    std::vector<std::uint8_t> out{'D', 'N', 'A', 'P', 0x01};
    put_u64le(out, pool.params.molecule_count);
    put_u32le(out, pool.params.molecule_bits);
    pack_bits(out, pool.molecules, pool.params.molecule_bits);
    return out;
}

void write_pool(const std::filesystem::path& path, const MoleculePool& pool) {
    write_file_atomic(path, serialize_pool(pool));
}

MoleculePool read_pool(const std::filesystem::path& path, double coverage) {
    const auto data = read_file(path);
    Reader r(data);
    if (r.u8() != 'D' || r.u8() != 'N' || r.u8() != 'A' || r.u8() != 'P')
        throw FormatError("not a DNAP pool file: " + path.string());
    if (r.u8() != 0x01)
        throw FormatError("unsupported DNAP version");
    const std::uint64_t m = r.u64le();
    const std::uint32_t l = r.u32le();
    auto mols = unpack_bits(r, m, l);
    if (r.remaining() != 0)
        throw FormatError("trailing bytes after pool data: " + path.string());
    const long long n = std::llround(coverage * static_cast<double>(m));
    if (n < 1)
        throw DomainError("read_pool: c*M rounds to zero draws");
    return make_pool(params_from_counts(m, l, static_cast<std::uint64_t>(n)),
                     std::move(mols));
}

std::vector<std::uint8_t> serialize_samples(const SampleSet& samples) {
    samples.validate();
    std::vector<std::uint8_t> out{'D', 'N', 'A', 'S', 0x01};
    put_u64le(out, samples.draws.size());
    put_u32le(out, samples.params.molecule_bits);
    out.push_back(samples.tagged() ? 1 : 0);
    if (!samples.tagged()) {
        pack_bits(out, samples.draws, samples.params.molecule_bits);
    } else {
        for (std::size_t i = 0; i < samples.draws.size(); ++i) {
            const auto& bytes = samples.draws[i].bytes();
            out.insert(out.end(), bytes.begin(), bytes.end());
            put_u64le(out, samples.tags[i]);
        }
    }
    return out;
}

void write_samples(const std::filesystem::path& path, const SampleSet& samples) {
    write_file_atomic(path, serialize_samples(samples));
}

SampleSet read_samples(const std::filesystem::path& path) {
    const auto data = read_file(path);
    Reader r(data);
    if (r.u8() != 'D' || r.u8() != 'N' || r.u8() != 'A' || r.u8() != 'S')
        throw FormatError("not a DNAS sample file: " + path.string());
    if (r.u8() != 0x01)
        throw FormatError("unsupported DNAS version");
    const std::uint64_t n = r.u64le();
    const std::uint32_t l = r.u32le();
    const std::uint8_t tagged = r.u8();
    if (tagged > 1)
        throw FormatError("bad tag-presence flag");

    SampleSet s;
    if (!tagged) {
        s.draws = unpack_bits(r, n, l);
    } else {
        const std::size_t mol_bytes = (l + 7) / 8;
        s.draws.reserve(n);
        s.tags.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint8_t* p = r.bytes(mol_bytes);
            Molecule m(l);
            for (std::uint32_t b = 0; b < l; ++b)
                m.set_bit(b, (p[b / 8] >> (7 - b % 8)) & 1u);
            s.draws.push_back(std::move(m));
            std::uint64_t tag = 0;
            const std::uint8_t* tp = r.bytes(8);
            for (int j = 0; j < 8; ++j)
                tag |= static_cast<std::uint64_t>(tp[j]) << (8 * j);
            s.tags.push_back(tag);
        }
    }
    if (r.remaining() != 0)
        throw FormatError("trailing bytes after sample data: " + path.string());
    // M is not stored; rebuild nominal params so the set is self-consistent.
    std::uint64_t nominal_m = n < 2 ? 2 : n;
    if (tagged)
        for (std::uint64_t t : s.tags)
            nominal_m = std::max(nominal_m, t + 1);
    s.params = params_from_counts(nominal_m, l, n);
    return s;
}

} // namespace dnastore
