#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace dnastore {

// GF(2^w) arithmetic for w in [2, 24]. The moduli for w = 8 (0x11B) and
// w = 16 (0x1100B) are the published field polynomials of the codec's wire
// format; the remaining widths use standard primitive polynomials and exist
// so a payload that is not a multiple of w can code its tail column in a
// narrower field.

// Irreducible modulus for the width, including the x^w term.
std::uint32_t gf_modulus(unsigned width);

// Carry-less (polynomial) multiplication reduced by the width's modulus.
// This is the definitional route; Field::mul computes the same function
// through log tables.
std::uint32_t gf_mul(std::uint32_t x, std::uint32_t y, unsigned width);

// Inverse by exponentiation to 2^w - 2. gf_inv(0) is a division by zero.
std::uint32_t gf_inv(std::uint32_t x, unsigned width);

// Table-backed field for hot paths (log/antilog over a generator found at
// build time). Widths above 20 skip the tables and reduce directly.
class Field {
public:
    static const Field& get(unsigned width);

    unsigned width() const { return width_; }
    std::uint32_t order() const { return order_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0)
            return 0;
        if (!log_.empty())
            return exp_[log_[a] + log_[b]];
        return gf_mul(a, b, width_);
    }

    std::uint32_t inv(std::uint32_t x) const;
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const;

private:
    explicit Field(unsigned width);

    unsigned width_;
    std::uint32_t order_;
    std::vector<std::uint32_t> exp_; // doubled so log sums need no reduction
    std::vector<std::uint32_t> log_;
};

} // namespace dnastore
