#include "dnastore/experiments.hpp"

#include <cmath>

#include <json.hpp>

#include "dnastore/bounds.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/codec.hpp"
#include "dnastore/coupon.hpp"
#include "dnastore/errors.hpp"
#include "dnastore/numfmt.hpp"
#include "dnastore/parallel.hpp"
#include "dnastore/pool_io.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

namespace {

constexpr const char* kKinds[] = {"erasure", "distinct", "tail", "codec-frontier",
                                  "capacity-curve"};

bool stochastic_kind(const std::string& kind) {
    return kind != "capacity-curve";
}

std::uint32_t bits_for(std::uint64_t m) {
    std::uint32_t bits = 1;
    while ((m - 1) >> bits)
        ++bits;
    return bits;
}

} // namespace

void ExperimentSpec::validate() const {
    bool known = false;
    for (const char* k : kKinds)
        known |= kind == k;
    if (!known)
        throw DomainError("experiment spec: unknown kind '" + kind + "'");
    if (trials < 1)
        throw DomainError("experiment spec: trials must be >= 1");
    if (stochastic_kind(kind) && !has_seed)
        throw DomainError("experiment spec: stochastic kinds require a seed");

    if (kind == "erasure" || kind == "distinct" || kind == "tail") {
        if (m.empty() || c.empty())
            throw DomainError("experiment spec: grid needs m and c lists");
    }
    if (kind == "tail" && delta.empty())
        throw DomainError("experiment spec: tail kind needs a delta list");
    if (kind == "codec-frontier") {
        if (m.empty() || l.size() != m.size() || w.size() != m.size())
            throw DomainError(
                "experiment spec: codec-frontier needs parallel m, l, w lists");
        if (c.empty())
            throw DomainError("experiment spec: codec-frontier needs a c list");
        if (k.empty() && !use_suggested_k)
            throw DomainError(
                "experiment spec: codec-frontier needs a k list or use_suggested_k");
    }
    if (kind == "capacity-curve" && (beta.empty() || c.empty()))
        throw DomainError("experiment spec: capacity-curve needs beta and c lists");
}

ExperimentSpec spec_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentSpec spec;
    spec.kind = j.value("kind", "");
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("m"))
            spec.m = g.at("m").get<std::vector<std::uint64_t>>();
        if (g.contains("l"))
            spec.l = g.at("l").get<std::vector<std::uint32_t>>();
        if (g.contains("w"))
            spec.w = g.at("w").get<std::vector<unsigned>>();
        if (g.contains("beta"))
            spec.beta = g.at("beta").get<std::vector<double>>();
        if (g.contains("c"))
            spec.c = g.at("c").get<std::vector<double>>();
        if (g.contains("delta"))
            spec.delta = g.at("delta").get<std::vector<double>>();
        if (g.contains("k"))
            spec.k = g.at("k").get<std::vector<std::uint64_t>>();
    }
    spec.use_suggested_k = j.value("use_suggested_k", false);
    if (j.contains("trials"))
        spec.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) {
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.has_seed = true;
    }
    spec.out = j.value("out", "");
    spec.validate();
    return spec;
}

bool ExperimentResult::pass() const {
    for (const Assertion& a : assertions)
        if (!a.pass)
            return false;
    return true;
}

ExperimentResult run_erasure(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    out.kind = "erasure";
    out.csv_name = spec.out.empty() ? "erasure.csv" : spec.out;
    out.table.header = {"m",          "c",          "n",            "trials",
                        "empirical",  "analytic",   "asymptotic",   "gap_analytic",
                        "gap_asymptotic"};

    std::uint64_t cell = 0;
    for (std::uint64_t m : spec.m) {
        for (double c : spec.c) {
            const std::uint64_t cell_seed = derive_stream_seed(spec.seed, cell++);
            const long long n = std::llround(c * static_cast<double>(m));
            if (n < 1)
                throw DomainError("run_erasure: c*M rounds to zero draws");
            const auto params =
                params_from_counts(m, bits_for(m), static_cast<std::uint64_t>(n));
            const auto pool = sequential_pool(params);
            const double empirical =
                empirical_erasure_probability(pool, spec.trials, cell_seed);
            const double analytic =
                analytic_erasure_probability(m, static_cast<std::uint64_t>(n));
            const double asymptotic = std::exp(-c);
            out.table.rows.push_back({u64str(m), g10(c), u64str(params.draw_count),
                                      u64str(spec.trials), g10(empirical), g10(analytic),
                                      g10(asymptotic), g10(std::abs(empirical - analytic)),
                                      g10(std::abs(empirical - asymptotic))});

            const double se = std::sqrt(analytic * (1.0 - analytic) /
                                        (static_cast<double>(m) *
                                         static_cast<double>(spec.trials)));
            const double tol = std::max(6.0 * se, 1e-12);
            Assertion a;
            a.name = "erasure m=" + u64str(m) + " c=" + g10(c);
            a.pass = std::abs(empirical - analytic) <= tol;
            a.detail = "|empirical-analytic|=" + g10(std::abs(empirical - analytic)) +
                       " tol=" + g10(tol);
            out.assertions.push_back(std::move(a));
        }
    }
    return out;
}

ExperimentResult run_distinct(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    out.kind = "distinct";
    out.csv_name = spec.out.empty() ? "distinct.csv" : spec.out;
    out.table.header = {"m",             "c",                 "n",          "trials",
                        "mean_fraction", "analytic_fraction", "sample_std", "abs_gap"};

    std::uint64_t cell = 0;
    for (std::uint64_t m : spec.m) {
        for (double c : spec.c) {
            const std::uint64_t cell_seed = derive_stream_seed(spec.seed, cell++);
            const auto summary = simulate_distinct(m, c, spec.trials, cell_seed);
            const double analytic =
                expected_distinct(m, summary.n) / static_cast<double>(m);
            const double gap = std::abs(summary.mean_fraction - analytic);
            out.table.rows.push_back({u64str(m), g10(c), u64str(summary.n),
                                      u64str(spec.trials), g10(summary.mean_fraction),
                                      g10(analytic), g10(summary.sample_std), g10(gap)});

            const double se = std::sqrt(analytic * (1.0 - analytic) /
                                        (static_cast<double>(m) *
                                         static_cast<double>(spec.trials)));
            const double tol = std::max(6.0 * se, 1e-12);
            Assertion a;
            a.name = "distinct m=" + u64str(m) + " c=" + g10(c);
            a.pass = gap <= tol;
            a.detail = "|mean-analytic|=" + g10(gap) + " tol=" + g10(tol);
            out.assertions.push_back(std::move(a));
        }
    }
    return out;
}

ExperimentResult run_distinct_tail(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    out.kind = "tail";
    out.csv_name = spec.out.empty() ? "tail.csv" : spec.out;
    out.table.header = {"m",      "c",         "n",           "delta",
                        "trials", "empirical", "bound_proof", "bound_displayed"};

    std::uint64_t cell = 0;
    for (std::uint64_t m : spec.m) {
        for (double c : spec.c) {
            const std::uint64_t cell_seed = derive_stream_seed(spec.seed, cell++);
            const auto summary = simulate_distinct(m, c, spec.trials, cell_seed, spec.delta);
            for (std::size_t d = 0; d < spec.delta.size(); ++d) {
                const auto& tail = summary.tails[d];
                const double displayed =
                    chebyshev_tail_bound(TailBoundInputs{m, c, tail.delta}, true);
                out.table.rows.push_back({u64str(m), g10(c), u64str(summary.n),
                                          g10(tail.delta), u64str(spec.trials),
                                          g10(tail.empirical), g10(tail.bound),
                                          g10(displayed)});
                Assertion a;
                a.name = "tail m=" + u64str(m) + " c=" + g10(c) +
                         " delta=" + g10(tail.delta);
                a.pass = tail.empirical <= tail.bound;
                a.detail = "empirical=" + g10(tail.empirical) +
                           " bound=" + g10(tail.bound);
                out.assertions.push_back(std::move(a));
            }
        }
    }
    return out;
}

ExperimentResult run_codec_frontier(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    out.kind = "codec-frontier";
    out.csv_name = spec.out.empty() ? "codec-frontier.csv" : spec.out;
    out.table.header = {"m",         "l",        "w",         "c",
                        "k",         "trials",   "successes", "success_rate",
                        "achieved_rate", "beta_eff", "capacity", "rate_gap"};

    std::uint64_t cell = 0;
    for (std::size_t cfg = 0; cfg < spec.m.size(); ++cfg) {
        for (double c : spec.c) {
            std::vector<std::uint64_t> ks = spec.k;
            if (spec.use_suggested_k)
                ks.push_back(suggested_information_count(spec.m[cfg], c));

            std::uint64_t best_k = 0;
            double best_gap = 0.0;
            double capacity_here = 0.0;
            for (std::uint64_t k : ks) {
                const std::uint64_t cell_seed = derive_stream_seed(spec.seed, cell++);
                const auto config =
                    make_codec_config(spec.m[cfg], spec.l[cfg], spec.w[cfg], k);

                // Payload: deterministic random bytes, one stream per cell.
                const std::uint64_t capacity_bits =
                    k * static_cast<std::uint64_t>(config.payload_bits());
                if (capacity_bits < 32)
                    throw CapacityError("run_codec_frontier: k*payload too small "
                                        "for the length header");
                const std::uint64_t data_len = (capacity_bits - 32) / 8;
                SplitMix64 data_rng(derive_stream_seed(cell_seed, spec.trials));
                std::vector<std::uint8_t> data(data_len);
                for (auto& b : data)
                    b = static_cast<std::uint8_t>(data_rng.next());

                auto pool = encode(data, config);
                pool.params = with_coverage(pool.params, c);
                std::vector<std::uint8_t> success(spec.trials, 0);
                parallel_for(spec.trials, [&](std::size_t t) {
                    const auto samples = sample_with_replacement(
                        pool, derive_stream_seed(cell_seed, t));
                    try {
                        success[t] = decode(samples, config) == data;
                    } catch (const InsufficientCoverage&) {
                        success[t] = 0;
                    }
                });
                std::uint64_t successes = 0;
                for (std::uint8_t s : success)
                    successes += s;

                const double rate = achieved_rate(config);
                const double beta_eff = static_cast<double>(spec.l[cfg]) /
                                        std::log2(static_cast<double>(spec.m[cfg]));
                capacity_here = capacity(beta_eff, c);
                const double success_rate =
                    static_cast<double>(successes) / static_cast<double>(spec.trials);
                out.table.rows.push_back(
                    {u64str(spec.m[cfg]), u64str(spec.l[cfg]), u64str(spec.w[cfg]),
                     g10(c), u64str(k), u64str(spec.trials), u64str(successes),
                     g10(success_rate), g10(rate), g10(beta_eff), g10(capacity_here),
                     g10(capacity_here - rate)});
                if (success_rate >= 0.99 && k > best_k) {
                    best_k = k;
                    best_gap = capacity_here - rate;
                }
            }
            Assertion a;
            a.name = "frontier m=" + u64str(spec.m[cfg]) + " c=" + g10(c);
            a.pass = best_k > 0;
            a.detail = best_k > 0
                           ? "largest_reliable_k=" + u64str(best_k) +
                                 " rate_gap=" + g10(best_gap)
                           : "no k reached success rate 0.99";
            out.assertions.push_back(std::move(a));
        }
    }
    return out;
}

ExperimentResult run_capacity_curve(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    out.kind = "capacity-curve";
    out.csv_name = spec.out.empty() ? "capacity-curve.csv" : spec.out;
    out.table.header = {"beta", "c", "capacity", "bound1", "bound2"};

    bool consistent = true;
    std::string witness;
    for (double beta : spec.beta) {
        for (double c : spec.c) {
            const auto point = capacity_point(beta, c);
            out.table.rows.push_back({g10(beta), g10(c), g10(point.capacity),
                                      g10(point.index_genie_bound),
                                      g10(point.type_count_bound)});
            const double ceiling = std::min(point.index_genie_bound,
                                            std::max(0.0, point.type_count_bound));
            const bool row_ok = point.capacity <= ceiling + 1e-15 &&
                                (beta > 1.0 || point.capacity == 0.0);
            if (!row_ok && consistent) {
                consistent = false;
                witness = "beta=" + g10(beta) + " c=" + g10(c);
            }
        }
    }
    out.assertions.push_back(Assertion{
        "capacity-curve consistency", consistent,
        consistent ? "capacity <= min(bound1, max(0, bound2)) and zero for beta <= 1"
                   : "violated at " + witness});
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.kind == "erasure")
        return run_erasure(spec);
    if (spec.kind == "distinct")
        return run_distinct(spec);
    if (spec.kind == "tail")
        return run_distinct_tail(spec);
    if (spec.kind == "codec-frontier")
        return run_codec_frontier(spec);
    return run_capacity_curve(spec);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i)
            out += ',';
        out += table.header[i];
    }
    out += "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += row[i];
        }
        out += "\r\n";
    }
    return out;
}

std::string summary_json_text(const ExperimentResult& result) {
    nlohmann::json j;
    j["kind"] = result.kind;
    j["pass"] = result.pass();
    j["assertions"] = nlohmann::json::array();
    for (const Assertion& a : result.assertions)
        j["assertions"].push_back(
            {{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    return j.dump(2) + "\n";
}

void write_experiment(const ExperimentResult& result,
                      const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const std::string csv = to_csv(result.table);
    write_file_atomic(outdir / result.csv_name,
                      std::vector<std::uint8_t>(csv.begin(), csv.end()));
    const std::string summary = summary_json_text(result);
    write_file_atomic(outdir / "summary.json",
                      std::vector<std::uint8_t>(summary.begin(), summary.end()));
}

} // namespace dnastore
