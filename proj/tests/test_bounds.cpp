#include <doctest.h>

#include <cmath>
#include <set>

#include "dnastore/bounds.hpp"
#include "dnastore/errors.hpp"

using namespace dnastore;

TEST_CASE("capacity closed form") {
    CHECK(capacity(1.0, 5.0) == 0.0);
    CHECK(capacity(0.5, 5.0) == 0.0);
    CHECK(capacity(2.0, 1.0) == doctest::Approx(0.3160602794).epsilon(1e-9));
    CHECK(capacity(1e9, 50.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(capacity(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(capacity(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(capacity(2.0, -1.0), DomainError);
}

TEST_CASE("simple bounds") {
    CHECK(index_genie_bound(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(index_genie_bound(1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK(type_count_bound(2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(type_count_bound(1.0) == 0.0);
    CHECK(type_count_bound(0.5) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(index_genie_bound(0.0), DomainError);
    CHECK_THROWS_AS(type_count_bound(0.0), DomainError);
}

TEST_CASE("capacity is the clamped product of the simple bounds") {
    for (double beta = 0.25; beta <= 5.0; beta += 0.25) {
        for (double c = 0.25; c <= 5.0; c += 0.25) {
            const auto p = capacity_point(beta, c);
            CHECK(p.capacity ==
                  std::max(0.0, p.index_genie_bound * p.type_count_bound));
            CHECK(p.capacity <= p.index_genie_bound + 1e-15);
            CHECK(p.capacity <= std::max(0.0, p.type_count_bound) + 1e-15);
            if (beta <= 1.0)
                CHECK(p.capacity == 0.0);
        }
    }
}

TEST_CASE("type counts, exact small values") {
    CHECK(type_count_exact(3, 2) == BigUint(6));
    CHECK(type_count_exact(7, 0) == BigUint(1));
    CHECK(type_count_exact(2, 3) == BigUint(4));
    CHECK(type_count_exact(1, 9) == BigUint(1));
}

TEST_CASE("enumeration matches the count and is lexicographic") {
    const auto types22 = enumerate_types(2, 2);
    REQUIRE(types22.size() == 3);
    CHECK(types22[0] == std::vector<std::uint64_t>{0, 2});
    CHECK(types22[1] == std::vector<std::uint64_t>{1, 1});
    CHECK(types22[2] == std::vector<std::uint64_t>{2, 0});

    CHECK(enumerate_types(1, 5) ==
          std::vector<std::vector<std::uint64_t>>{{5}});

    const auto types32 = enumerate_types(3, 2);
    const std::set<std::vector<std::uint64_t>> expected{
        {0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
    CHECK(std::set<std::vector<std::uint64_t>>(types32.begin(), types32.end()) ==
          expected);

    for (std::uint64_t a = 1; a <= 8; ++a) {
        for (std::uint64_t b = 0; b <= 8; ++b) {
            const auto all = enumerate_types(a, b);
            CHECK(BigUint(all.size()) == type_count_exact(a, b));
            for (std::size_t i = 1; i < all.size(); ++i)
                CHECK(all[i - 1] < all[i]);
        }
    }
}

TEST_CASE("string bijection round trips") {
    for (std::uint64_t a = 1; a <= 6; ++a) {
        for (std::uint64_t b = 0; b <= 6; ++b) {
            for (const auto& type : enumerate_types(a, b)) {
                const auto bits = type_to_string(type);
                CHECK(bits.size() == a - 1 + b);
                std::uint64_t ones = 0;
                for (bool v : bits)
                    ones += v;
                CHECK(ones == b);
                CHECK(string_to_type(bits, a) == type);
            }
        }
    }
}

TEST_CASE("enumeration guard trips on large instances") {
    CHECK_THROWS_AS(enumerate_types(20, 20), CapacityError);
}

TEST_CASE("Pascal identity holds exactly up to 30") {
    for (std::uint64_t a = 2; a <= 30; ++a)
        for (std::uint64_t b = 1; b <= 30; ++b)
            CHECK(type_count_exact(a, b) ==
                  type_count_exact(a - 1, b) + type_count_exact(a, b - 1));
}

TEST_CASE("exponential upper bound is strict") {
    CHECK(type_count_upper_log(3, 2) == doctest::Approx(2.0 * std::log(2.0 * std::exp(1.0)))
                                            .epsilon(1e-12));
    CHECK(std::log(6.0) < type_count_upper_log(3, 2));
    CHECK(type_count_upper_log(2, 1) ==
          doctest::Approx(std::log(2.0 * std::exp(1.0))).epsilon(1e-12));
    for (std::uint64_t a = 1; a <= 50; ++a)
        for (std::uint64_t b = 1; b <= 50; ++b)
            CHECK(type_count_exact(a, b).log_natural() < type_count_upper_log(a, b));
    CHECK_THROWS_AS(type_count_upper_log(3, 0), DomainError);
}

TEST_CASE("BigUint arithmetic and printing") {
    CHECK(BigUint(0).to_string() == "0");
    CHECK(BigUint(1000000007ull).to_string() == "1000000007");
    CHECK((BigUint(0xffffffffffffffffull) + BigUint(1)).to_string() ==
          "18446744073709551616");
    CHECK(binomial(30, 12) == binomial(30, 18));
    CHECK(binomial(30, 12).to_u64() == 86493225ull);
    CHECK(binomial(5, 7) == BigUint(0));

    // cross-check a large value against lgamma
    const BigUint big = type_count_exact(4097, 64); // C(4160, 64)
    const double expect =
        std::lgamma(4161.0) - std::lgamma(65.0) - std::lgamma(4097.0);
    CHECK(big.log_natural() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("finite-M rate bound approaches the asymptotic line") {
    // Purely analytic: at M = 1e300 the alpha correction term is < 1e-3.
    const double delta = 0.01;
    const auto bound = rate_upper_bound_finite_M(1e300, 2.0, 1.0, delta, 0.0);
    CHECK_FALSE(bound.beta_degenerate);
    const double limit = (1.0 - std::exp(-1.0) + delta) * 0.5;
    CHECK(std::abs(bound.value - limit) <= 1e-3);
    CHECK(bound.value > limit); // correction terms only add
}

TEST_CASE("finite-M rate bound decreases in M and dominates capacity") {
    double prev = 1e9;
    for (double m : {1e3, 1e6, 1e9, 1e12}) {
        const auto bound = rate_upper_bound_finite_M(m, 2.0, 1.0, 0.01, 0.01);
        CHECK(bound.value < prev);
        prev = bound.value;
        CHECK(bound.value > capacity(2.0, 1.0));
    }
}

TEST_CASE("finite-M rate bound validates alpha and flags degenerate beta") {
    // c = 0.3: 1 - e^{-c} + delta < 1/2, alpha = 2e cannot absorb the constant
    CHECK_THROWS_AS(rate_upper_bound_finite_M(1e6, 2.0, 0.3, 0.05, 0.0), DomainError);
    const auto degenerate = rate_upper_bound_finite_M(1e6, 0.8, 1.0, 0.01, 0.0);
    CHECK(degenerate.beta_degenerate);
    CHECK(degenerate.value < 0.1); // (1 - 1/0.8) < 0 drags the raw value down
    CHECK_THROWS_AS(rate_upper_bound_finite_M(1.0, 2.0, 1.0, 0.01, 0.0), DomainError);
    CHECK_THROWS_AS(rate_upper_bound_finite_M(1e6, 2.0, 1.0, 0.01, 1.5), DomainError);
}
