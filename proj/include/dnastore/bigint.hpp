#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace dnastore {

// Unsigned arbitrary-precision integer, just wide enough for exact binomial
// coefficients: add, multiply/divide by machine words, compare, print.
// Limbs are base 2^32, little-endian, no trailing zero limbs.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v); // NOLINT: implicit by design, mirrors integer literals

    bool is_zero() const { return limbs_.empty(); }
    std::uint64_t bit_length() const;

    // Throws if the value does not fit.
    std::uint64_t to_u64() const;

    BigUint& operator+=(const BigUint& other);
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    BigUint& mul_u64(std::uint64_t v);

    // Exact division; throws if a nonzero remainder would be lost.
    BigUint& div_exact_u32(std::uint32_t v);

    // Division with remainder by a small word (used for printing).
    std::uint32_t divmod_u32(std::uint32_t v);

    std::string to_string() const;

    // Natural log of the value (value must be nonzero).
    double log_natural() const;

    friend bool operator==(const BigUint&, const BigUint&) = default;
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

private:
    void trim();
    std::vector<std::uint32_t> limbs_;
};

// C(n, k), exact.
BigUint binomial(std::uint64_t n, std::uint64_t k);

} // namespace dnastore
