#include "dnastore/coupon.hpp"

#include <cmath>

#include "dnastore/errors.hpp"
#include "dnastore/parallel.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

double expected_distinct(std::uint64_t m, std::uint64_t n) {
    if (m < 1)
        throw DomainError("expected_distinct: M must be >= 1");
    if (n == 0)
        return 0.0;
    const double dm = static_cast<double>(m);
    const double miss = std::exp(static_cast<double>(n) * std::log1p(-1.0 / dm));
    return dm * (1.0 - miss);
}

double harmonic(std::uint64_t n) {
    if (n < 1)
        throw DomainError("harmonic: n must be >= 1");
    if (n <= 1000000) {
        double sum = 0.0;
        for (std::uint64_t i = n; i >= 1; --i)
            sum += 1.0 / static_cast<double>(i);
        return sum;
    }
    const double dn = static_cast<double>(n);
    return std::log(dn) + kEulerMascheroni + 1.0 / (2.0 * dn) - 1.0 / (12.0 * dn * dn);
}

namespace {

// alpha*M as an exact integer count; callers are responsible for rounding.
std::uint64_t collected_count(std::uint64_t m, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("alpha must lie in (0, 1]");
    const double am = alpha * static_cast<double>(m);
    const double rounded = std::round(am);
    if (std::abs(am - rounded) > 1e-6)
        throw DomainError("alpha*M must be an integer (round before calling)");
    if (rounded < 1.0)
        throw DomainError("alpha*M must be >= 1");
    return static_cast<std::uint64_t>(rounded);
}

} // namespace

double expected_waiting_time(std::uint64_t m, double alpha) {
    const std::uint64_t a = collected_count(m, alpha);
    if (m - a < 1)
        throw DomainError("expected_waiting_time: (1-alpha)*M must be >= 1");
    return static_cast<double>(m) * (harmonic(m) - harmonic(m - a));
}

double waiting_time_variance(std::uint64_t m, double alpha) {
    if (alpha >= 1.0)
        throw DomainError("waiting_time_variance: alpha must be < 1");
    const std::uint64_t a = collected_count(m, alpha);
    const double dm = static_cast<double>(m);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < a; ++i) {
        const double rest = dm - static_cast<double>(i);
        sum += static_cast<double>(i) * dm / (rest * rest);
    }
    return sum;
}

double variance_bound_alpha(std::uint64_t m, double alpha) {
    if (!(alpha > 0.0) || alpha >= 1.0)
        throw DomainError("variance_bound_alpha: alpha must lie in (0, 1)");
    const double rest = 1.0 - alpha;
    return static_cast<double>(m) * alpha / (2.0 * rest * rest);
}

double variance_bound_exp(std::uint64_t m, double c) {
    if (!(c > 0.0))
        throw DomainError("variance_bound_exp: c must be > 0");
    return static_cast<double>(m) * 2.0 * std::exp(2.0 * c);
}

double TailBoundInputs::xi() const {
    // ln(e^{-c}/(e^{-c} - delta)) = -log1p(-delta * e^c)
    return -std::log1p(-delta * std::exp(c));
}

void TailBoundInputs::validate() const {
    if (m < 1)
        throw DomainError("tail bound: M must be >= 1");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("tail bound: c must be finite and > 0");
    const double ec = std::exp(-c);
    if (!(delta > 0.0) || delta > ec / 2.0)
        throw DomainError("tail bound: delta must lie in (0, e^{-c}/2]");
    if (!(xi() - std::exp(c) / static_cast<double>(m) > 0.0))
        throw BoundUndefinedError("tail bound: xi - e^c/M <= 0, M too small for this delta");
}

double chebyshev_tail_bound(const TailBoundInputs& in, bool displayed_form) {
    in.validate();
    const double dm = static_cast<double>(in.m);
    const double denom = in.xi() - std::exp(in.c) / dm;
    double bound = (1.0 / dm) * 2.0 * std::exp(2.0 * in.c) / (denom * denom);
    if (displayed_form)
        bound /= 2.0;
    return bound;
}

DistinctSummary simulate_distinct(std::uint64_t m, double c, std::uint64_t trials,
                                  std::uint64_t seed,
                                  const std::vector<double>& deltas,
                                  unsigned threads) {
    if (m < 1)
        throw DomainError("simulate_distinct: M must be >= 1");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("simulate_distinct: c must be finite and > 0");
    if (trials < 1)
        throw DomainError("simulate_distinct: trials must be >= 1");
    const long long n_ll = std::llround(c * static_cast<double>(m));
    if (n_ll < 1)
        throw DomainError("simulate_distinct: c*M rounds to zero draws");
    const std::uint64_t n = static_cast<std::uint64_t>(n_ll);

    DistinctSummary out;
    out.m = m;
    out.n = n;
    out.trials = trials;
    out.distinct_counts.resize(trials);

    parallel_for(
        trials,
        [&](std::size_t t) {
            SplitMix64 rng(derive_stream_seed(seed, t));
            std::vector<std::uint8_t> hit(m, 0);
            std::uint64_t distinct = 0;
            for (std::uint64_t d = 0; d < n; ++d) {
                std::uint8_t& h = hit[rng.next_below(m)];
                distinct += (h == 0);
                h = 1;
            }
            out.distinct_counts[t] = distinct;
        },
        threads);

    // Aggregate in trial order so the result never depends on scheduling.
    double sum = 0.0;
    for (std::uint64_t q : out.distinct_counts)
        sum += static_cast<double>(q) / static_cast<double>(m);
    out.mean_fraction = sum / static_cast<double>(trials);
    double sq = 0.0;
    for (std::uint64_t q : out.distinct_counts) {
        const double d = static_cast<double>(q) / static_cast<double>(m) - out.mean_fraction;
        sq += d * d;
    }
    out.sample_std = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;

    for (double delta : deltas) {
        TailBoundInputs in{m, c, delta};
        const double bound = chebyshev_tail_bound(in);
        const double threshold = (1.0 - std::exp(-c) + delta) * static_cast<double>(m);
        std::uint64_t exceed = 0;
        for (std::uint64_t q : out.distinct_counts)
            exceed += static_cast<double>(q) > threshold;
        out.tails.push_back({delta,
                             static_cast<double>(exceed) / static_cast<double>(trials),
                             bound});
    }
    return out;
}

} // namespace dnastore
