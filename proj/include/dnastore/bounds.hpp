#pragma once

#include <cstdint>
#include <vector>

#include "dnastore/bigint.hpp"

namespace dnastore {

// Closed-form storage capacity max(0, (1 - e^{-c})(1 - 1/beta)). Zero for
// beta <= 1: below one index worth of bits per molecule no positive rate
// survives.
double capacity(double beta, double c);

// The two simple converse bounds. index_genie_bound = 1 - e^{-c} (erasure
// channel seen by a decoder told every sample's source index);
// type_count_bound = 1 - 1/beta, reported raw (may be negative, capacity
// clamps).
double index_genie_bound(double c);
double type_count_bound(double beta);

struct CapacityPoint {
    double beta = 0.0;
    double c = 0.0;
    double capacity = 0.0;
    double index_genie_bound = 0.0;
    double type_count_bound = 0.0;
};

CapacityPoint capacity_point(double beta, double c);

// T[a,b] = C(a+b-1, b): the number of vectors in Z_+^a with l1 norm b.
// Always exact arbitrary precision; these overflow 64 bits quickly.
BigUint type_count_exact(std::uint64_t a, std::uint64_t b);

// ln of the standard upper bound (e(a+b-1)/b)^b, valid and strictly above
// ln T[a,b] for b >= 1.
double type_count_upper_log(std::uint64_t a, std::uint64_t b);

// Bijection behind the count: vector (x1..xa) <-> the 0/1 string
// 1^{x1} 0 1^{x2} 0 ... 0 1^{xa} with a-1 zeros and b ones.
std::vector<bool> type_to_string(const std::vector<std::uint64_t>& type);
std::vector<std::uint64_t> string_to_type(const std::vector<bool>& bits, std::uint64_t a);

// All vectors of Z_+^a with l1 norm b, lexicographically ascending,
// materialized through the string bijection. Guarded: refuses to produce
// more than ~10^6 vector entries in total.
std::vector<std::vector<std::uint64_t>> enumerate_types(std::uint64_t a, std::uint64_t b);

struct FiniteRateBound {
    double value = 0.0;
    bool beta_degenerate = false; // beta <= 1: factors go negative, value is raw
};

// Finite-M converse evaluation:
//   P_E*((beta-1)/beta + log(alpha)/(beta log M))
//   + (1 - e^{-c} + delta)*(1 - 1/beta + log(alpha)/(beta log M))
//   + 2/(M*L),  L = beta*log2(M), alpha = 2e.
// alpha = 2e is validated before use: requires
// log(e + e M^{beta-1}/q) <= log(alpha M^{beta-1}) for q = 1 - e^{-c} + delta,
// which needs q > 1/2 and M^{beta-1}(2 - 1/q) >= 1 (checked in log domain).
// M is a real here; the expression only involves log M, so purely analytic
// regimes (M ~ 1e300) evaluate fine.
FiniteRateBound rate_upper_bound_finite_M(double m, double beta, double c,
                                          double delta, double p_e);

} // namespace dnastore
