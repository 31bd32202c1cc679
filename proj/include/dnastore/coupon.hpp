#pragma once

#include <cstdint>
#include <vector>

namespace dnastore {

// Statistics of Q, the number of distinct coupons after N = c*M uniform
// draws with replacement from M coupons. Q is distributed like the l1 norm
// of the genie channel's frequency vector.

// M * (1 - (1 - 1/M)^N), computed via exp(N*log1p(-1/M)) so it stays
// accurate at large M.
double expected_distinct(std::uint64_t m, std::uint64_t n);

// H_n. Direct smallest-term-first summation up to 10^6, the asymptotic
// expansion ln n + gamma + 1/(2n) - 1/(12 n^2) above.
double harmonic(std::uint64_t n);

inline constexpr double kEulerMascheroni = 0.5772156649015329;

// Exact expected number of draws to collect alpha*M distinct coupons:
// M * (H_M - H_{(1-alpha)M}). alpha*M must be integral (callers round) and
// (1-alpha)*M >= 1 (full collection is out of this regime).
double expected_waiting_time(std::uint64_t m, double alpha);

// Exact Var[T] = sum_{i=0}^{alpha*M - 1} i*M/(M-i)^2 for the same T.
double waiting_time_variance(std::uint64_t m, double alpha);

// The two upper bounds on Var[T]: M*alpha/(2(1-alpha)^2), and 2*M*e^{2c}
// which dominates it whenever alpha = 1 - e^{-c} + delta with
// delta <= e^{-c}/2.
double variance_bound_alpha(std::uint64_t m, double alpha);
double variance_bound_exp(std::uint64_t m, double c);

struct TailBoundInputs {
    std::uint64_t m = 0;
    double c = 0.0;
    double delta = 0.0; // must lie in (0, e^{-c}/2]

    // xi = ln(e^{-c} / (e^{-c} - delta)) > 0
    double xi() const;
    void validate() const;
};

// Chebyshev bound on P(Q >= (1 - e^{-c} + delta) M):
//   (1/M) * 2 e^{2c} / (xi - e^c/M)^2.
// This looser form is what the derivation chain actually supports, so it is
// the contractual value. A circulating variant of the same bound carries an
// extra factor 2 in the denominator; displayed_form = true returns that
// tighter variant (exactly half) for comparison columns.
double chebyshev_tail_bound(const TailBoundInputs& in, bool displayed_form = false);

struct DistinctSummary {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    double mean_fraction = 0.0;
    double sample_std = 0.0; // of the per-trial fraction

    struct Tail {
        double delta;
        double empirical; // fraction of trials with Q/M > 1 - e^{-c} + delta
        double bound;     // proof-form Chebyshev bound
    };
    std::vector<Tail> tails;
    std::vector<std::uint64_t> distinct_counts; // Q per trial, in trial order
};

// Monte Carlo coupon experiment: `trials` independent runs of N = round(c*M)
// draws, trial t seeded with derive_stream_seed(seed, t). Deterministic for
// a given seed regardless of thread count.
DistinctSummary simulate_distinct(std::uint64_t m, double c, std::uint64_t trials,
                                  std::uint64_t seed,
                                  const std::vector<double>& deltas = {},
                                  unsigned threads = 0);

} // namespace dnastore
