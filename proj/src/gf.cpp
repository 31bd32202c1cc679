#include "dnastore/gf.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "dnastore/errors.hpp"

namespace dnastore {

namespace {

constexpr unsigned kMinWidth = 2;
constexpr unsigned kMaxWidth = 24;
constexpr unsigned kMaxTableWidth = 20;

// Index = width. 0x11B and 0x1100B are fixed by the file/wire contract.
constexpr std::uint32_t kModulus[kMaxWidth + 1] = {
    0,         0,         0x7,       0xB,        0x13,     0x25,
    0x43,      0x89,      0x11B,     0x211,      0x409,    0x805,
    0x1053,    0x201B,    0x4443,    0x8003,     0x1100B,  0x20009,
    0x40081,   0x80027,   0x100009,  0x200005,   0x400003, 0x800021,
    0x1000087,
};

void check_width(unsigned width) {
    if (width < kMinWidth || width > kMaxWidth)
        throw DomainError("gf: field width must lie in [2, 24]");
}

void check_element(std::uint32_t x, unsigned width) {
    if (x >> width)
        throw DomainError("gf: element out of range for field width");
}

} // namespace

std::uint32_t gf_modulus(unsigned width) {
    check_width(width);
    return kModulus[width];
}

std::uint32_t gf_mul(std::uint32_t x, std::uint32_t y, unsigned width) {
    check_width(width);
    check_element(x, width);
    check_element(y, width);
    std::uint64_t acc = 0;
    std::uint64_t a = x;
    while (y) {
        if (y & 1u)
            acc ^= a;
        a <<= 1;
        y >>= 1;
    }
    const std::uint64_t mod = kModulus[width];
    for (int bit = 2 * static_cast<int>(width) - 2; bit >= static_cast<int>(width); --bit)
        if ((acc >> bit) & 1u)
            acc ^= mod << (bit - static_cast<int>(width));
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t gf_inv(std::uint32_t x, unsigned width) {
    check_width(width);
    check_element(x, width);
    if (x == 0)
        throw DomainError("gf_inv: division by zero");
    // x^(2^w - 2) by square and multiply.
    std::uint64_t e = (1ull << width) - 2;
    std::uint32_t base = x;
    std::uint32_t result = 1;
    while (e) {
        if (e & 1u)
            result = gf_mul(result, base, width);
        base = gf_mul(base, base, width);
        e >>= 1;
    }
    return result;
}

Field::Field(unsigned width) : width_(width), order_(1u << width) {
    check_width(width);
    if (width > kMaxTableWidth)
        return; // carry-less fallback only

    const std::uint32_t n = order_ - 1;
    log_.assign(order_, 0xffffffffu);
    exp_.assign(2 * static_cast<std::size_t>(n), 0);

    // Find a generator; with a primitive modulus g = 2 works, 0x11B needs 3.
    for (std::uint32_t g = 2; g < order_; ++g) {
        std::uint32_t x = 1;
        bool ok = true;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (log_[x] != 0xffffffffu) { // early cycle: not a generator
                ok = false;
                break;
            }
            log_[x] = i;
            exp_[i] = x;
            exp_[i + n] = x;
            x = gf_mul(x, g, width_);
        }
        if (ok && x == 1)
            break;
        std::fill(log_.begin(), log_.end(), 0xffffffffu);
    }
    if (log_[1] == 0xffffffffu)
        throw Error("gf: no generator found (modulus not irreducible?)");
    log_[0] = 0; // never read: mul/inv special-case zero
}

std::uint32_t Field::inv(std::uint32_t x) const {
    if (x == 0)
        throw DomainError("gf: division by zero");
    if (!log_.empty())
        return exp_[(order_ - 1) - log_[x]];
    return gf_inv(x, width_);
}

std::uint32_t Field::pow(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t result = 1;
    std::uint32_t base = x;
    while (e) {
        if (e & 1u)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

const Field& Field::get(unsigned width) {
    check_width(width);
    static std::mutex mutex;
    static std::array<std::unique_ptr<Field>, kMaxWidth + 1> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (!cache[width])
        cache[width].reset(new Field(width));
    return *cache[width];
}

} // namespace dnastore
