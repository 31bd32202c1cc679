#include "dnastore/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dnastore/errors.hpp"

namespace dnastore {

BigUint::BigUint(std::uint64_t v) {
    if (v)
        limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32)
        limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0)
        limbs_.pop_back();
}

std::uint64_t BigUint::bit_length() const {
    if (limbs_.empty())
        return 0;
    std::uint64_t bits = (limbs_.size() - 1) * 32ull;
    std::uint32_t top = limbs_.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

std::uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 2)
        throw DomainError("BigUint: value does not fit in 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() > 1)
        v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty())
        v |= limbs_[0];
    return v;
}

BigUint& BigUint::operator+=(const BigUint& other) {
    const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = carry + limbs_[i];
        if (i < other.limbs_.size())
            sum += other.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(sum);
        carry = sum >> 32;
    }
    if (carry)
        limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::mul_u64(std::uint64_t v) {
    if (v == 0 || is_zero()) {
        limbs_.clear();
        return *this;
    }
    const std::uint64_t lo = v & 0xffffffffull;
    const std::uint64_t hi = v >> 32;

    std::vector<std::uint32_t> out(limbs_.size() + 2, 0);
    // low half
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * lo + out[i] + carry;
        out[i] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    out[limbs_.size()] = static_cast<std::uint32_t>(carry);
    // high half, shifted one limb
    if (hi) {
        carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * hi + out[i + 1] + carry;
            out[i + 1] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::uint64_t cur = static_cast<std::uint64_t>(out[limbs_.size() + 1]) + carry;
        out[limbs_.size() + 1] = static_cast<std::uint32_t>(cur);
    }
    limbs_ = std::move(out);
    trim();
    return *this;
}

std::uint32_t BigUint::divmod_u32(std::uint32_t v) {
    if (v == 0)
        throw DomainError("BigUint: division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        const std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / v);
        rem = cur % v;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

BigUint& BigUint::div_exact_u32(std::uint32_t v) {
    if (divmod_u32(v) != 0)
        throw DomainError("BigUint: inexact division");
    return *this;
}

std::string BigUint::to_string() const {
    if (is_zero())
        return "0";
    BigUint tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        const std::uint32_t chunk = tmp.divmod_u32(1000000000u);
        char buf[16];
        if (tmp.is_zero())
            std::snprintf(buf, sizeof(buf), "%u", chunk);
        else
            std::snprintf(buf, sizeof(buf), "%09u", chunk);
        out.insert(0, buf);
    }
    return out;
}

double BigUint::log_natural() const {
    if (is_zero())
        throw DomainError("BigUint: log of zero");
    // Top two limbs carry ~64 significant bits; the rest only shifts the log.
    const std::size_t used = std::min<std::size_t>(limbs_.size(), 2);
    double mant = 0.0;
    for (std::size_t i = 0; i < used; ++i)
        mant = mant * 4294967296.0 + static_cast<double>(limbs_[limbs_.size() - 1 - i]);
    const std::size_t skipped = limbs_.size() - used;
    return std::log(mant) + static_cast<double>(skipped) * 32.0 * std::log(2.0);
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
        if (a.limbs_[i] != b.limbs_[i])
            return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
}

BigUint binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return BigUint(0);
    if (k > n - k)
        k = n - k;
    if (k >= (1ull << 32))
        throw DomainError("binomial: k too large for exact computation");
    BigUint result(1);
    // result stays integral after each step: the partial product is C(n-k+i, i).
    for (std::uint64_t i = 1; i <= k; ++i) {
        result.mul_u64(n - k + i);
        result.div_exact_u32(static_cast<std::uint32_t>(i));
    }
    return result;
}

} // namespace dnastore
