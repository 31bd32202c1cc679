#include "dnastore/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "dnastore/errors.hpp"

namespace dnastore {

double index_genie_bound(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("index_genie_bound: c must be finite and > 0");
    return -std::expm1(-c); // 1 - e^{-c}
}

double type_count_bound(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("type_count_bound: beta must be finite and > 0");
    return 1.0 - 1.0 / beta;
}

double capacity(double beta, double c) {
    const double product = index_genie_bound(c) * type_count_bound(beta);
    return std::max(0.0, product);
}

CapacityPoint capacity_point(double beta, double c) {
    return CapacityPoint{beta, c, capacity(beta, c), index_genie_bound(c),
                         type_count_bound(beta)};
}

BigUint type_count_exact(std::uint64_t a, std::uint64_t b) {
    if (a < 1)
        throw DomainError("type_count_exact: a must be >= 1");
    return binomial(a + b - 1, b);
}

double type_count_upper_log(std::uint64_t a, std::uint64_t b) {
    if (a < 1)
        throw DomainError("type_count_upper_log: a must be >= 1");
    if (b < 1)
        throw DomainError("type_count_upper_log: bound form undefined for b = 0");
    const double db = static_cast<double>(b);
    const double top = static_cast<double>(a + b - 1);
    return db * (1.0 + std::log(top / db)); // b * ln(e * (a+b-1) / b)
}

std::vector<bool> type_to_string(const std::vector<std::uint64_t>& type) {
    std::vector<bool> bits;
    for (std::size_t i = 0; i < type.size(); ++i) {
        if (i > 0)
            bits.push_back(false);
        bits.insert(bits.end(), type[i], true);
    }
    return bits;
}

std::vector<std::uint64_t> string_to_type(const std::vector<bool>& bits, std::uint64_t a) {
    std::vector<std::uint64_t> type(a, 0);
    std::size_t coord = 0;
    for (bool bit : bits) {
        if (bit) {
            ++type[coord];
        } else {
            if (++coord >= a)
                throw DomainError("string_to_type: more than a-1 zeros");
        }
    }
    if (coord != a - 1)
        throw DomainError("string_to_type: string must contain exactly a-1 zeros");
    return type;
}

std::vector<std::vector<std::uint64_t>> enumerate_types(std::uint64_t a, std::uint64_t b) {
    if (a < 1)
        throw DomainError("enumerate_types: a must be >= 1");
    const BigUint count = type_count_exact(a, b);
    if (count > BigUint(1000000))
        throw CapacityError("enumerate_types: materialization guard (10^6 entries) exceeded");
    const std::uint64_t total = count.to_u64();
    if (a > 1000000 / std::max<std::uint64_t>(total, 1))
        throw CapacityError("enumerate_types: materialization guard (10^6 entries) exceeded");

    // Distinct permutations of 0^{a-1} 1^b in lexicographic string order
    // decode to lexicographically ascending vectors.
    std::vector<bool> bits(a - 1 + b, false);
    std::fill(bits.begin() + static_cast<std::ptrdiff_t>(a - 1), bits.end(), true);
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(total);
    do {
        out.push_back(string_to_type(bits, a));
    } while (std::next_permutation(bits.begin(), bits.end()));
    return out;
}

FiniteRateBound rate_upper_bound_finite_M(double m, double beta, double c,
                                          double delta, double p_e) {
    if (!(m >= 2.0) || !std::isfinite(m))
        throw DomainError("rate_upper_bound_finite_M: M must be finite and >= 2");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("rate_upper_bound_finite_M: beta must be finite and > 0");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("rate_upper_bound_finite_M: c must be finite and > 0");
    if (!(delta > 0.0))
        throw DomainError("rate_upper_bound_finite_M: delta must be > 0");
    if (p_e < 0.0 || p_e > 1.0)
        throw DomainError("rate_upper_bound_finite_M: P_E must lie in [0, 1]");

    const double q = 1.0 - std::exp(-c) + delta;
    // alpha = 2e must satisfy e + e*M^{beta-1}/q <= alpha*M^{beta-1}, i.e.
    // M^{beta-1} * (2 - 1/q) >= 1. Checked in log domain to survive huge M.
    // For beta <= 1 the whole bound is degenerate and returned raw instead.
    if (beta > 1.0) {
        const double log_m = std::log(m);
        if (!(2.0 - 1.0 / q > 0.0) ||
            (beta - 1.0) * log_m + std::log(2.0 - 1.0 / q) < 0.0)
            throw DomainError(
                "rate_upper_bound_finite_M: alpha = 2e fails validation for these "
                "(M, beta, c, delta); requires 1 - e^{-c} + delta > 1/2 and M large "
                "enough");
    }

    const double alpha = 2.0 * std::exp(1.0);
    const double log2_m = std::log2(m);
    const double correction = std::log2(alpha) / (beta * log2_m);
    const double l = beta * log2_m;
    const double value = p_e * ((beta - 1.0) / beta + correction) +
                         q * (1.0 - 1.0 / beta + correction) +
                         2.0 / (m * l);
    return FiniteRateBound{value, beta <= 1.0};
}

} // namespace dnastore
