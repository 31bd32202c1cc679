#include <doctest.h>

#include <cmath>
#include <fstream>

#include "dnastore/channel.hpp"
#include "dnastore/errors.hpp"
#include "dnastore/experiments.hpp"
#include "testutil.hpp"

using namespace dnastore;

namespace {

ExperimentSpec erasure_spec() {
    ExperimentSpec spec;
    spec.kind = "erasure";
    spec.m = {100, 1000};
    spec.c = {1.0, 2.0};
    spec.trials = 50;
    spec.seed = 11;
    spec.has_seed = true;
    return spec;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("spec JSON parsing and validation") {
    const auto spec = spec_from_json_text(R"({
        "kind": "tail",
        "grid": {"m": [1000], "c": [1.0], "delta": [0.18]},
        "trials": 10,
        "seed": 42
    })");
    CHECK(spec.kind == "tail");
    CHECK(spec.m == std::vector<std::uint64_t>{1000});
    CHECK(spec.trials == 10);
    CHECK(spec.seed == 42);

    CHECK_THROWS_AS(spec_from_json_text(R"({"kind": "nope"})"), DomainError);
    // stochastic kinds demand a seed: no silent nondeterminism
    CHECK_THROWS_AS(spec_from_json_text(
                        R"({"kind": "erasure", "grid": {"m": [10], "c": [1.0]}})"),
                    DomainError);
    // capacity-curve is deterministic, seed optional
    CHECK_NOTHROW(spec_from_json_text(
        R"({"kind": "capacity-curve", "grid": {"beta": [2.0], "c": [1.0]}})"));
}

TEST_CASE("capacity curve table and assertions") {
    ExperimentSpec spec;
    spec.kind = "capacity-curve";
    spec.beta = {0.5, 1.0, 2.0};
    spec.c = {1.0};
    const auto result = run_capacity_curve(spec);
    CHECK(result.pass());
    REQUIRE(result.table.rows.size() == 3);
    CHECK(result.table.rows[0][2] == "0"); // beta = 0.5
    CHECK(result.table.rows[1][2] == "0"); // beta = 1
    CHECK(result.table.rows[2][2] == "0.3160602794");
    CHECK(result.table.rows[2][3] == "0.6321205588");
    CHECK(result.table.rows[2][4] == "0.5");
}

TEST_CASE("erasure experiment carries empirical and analytic columns") {
    const auto result = run_erasure(erasure_spec());
    CHECK(result.pass());
    REQUIRE(result.table.rows.size() == 4);
    for (const auto& row : result.table.rows) {
        const double analytic = std::stod(row[5]);
        const double asymptotic = std::stod(row[6]);
        const double c = std::stod(row[1]);
        CHECK(asymptotic == doctest::Approx(std::exp(-c)).epsilon(1e-9));
        CHECK(std::abs(std::stod(row[4]) - analytic) < 0.05);
    }
}

TEST_CASE("analytic erasure approaches e^{-c} monotonically in M") {
    for (double c : {0.5, 1.0, 2.0}) {
        double prev_gap = 1.0;
        for (std::uint64_t m : {100ull, 1000ull, 10000ull, 100000ull}) {
            const auto n = static_cast<std::uint64_t>(c * static_cast<double>(m));
            const double gap =
                std::abs(analytic_erasure_probability(m, n) - std::exp(-c));
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
}

TEST_CASE("three-sigma rate gap shrinks with M at fixed beta_eff") {
    ExperimentSpec spec;
    spec.kind = "codec-frontier";
    spec.m = {256, 1024};
    spec.l = {32, 40}; // beta_eff = 4 for both
    spec.w = {12, 16};
    spec.c = {2.0};
    spec.use_suggested_k = true;
    spec.trials = 30;
    spec.seed = 23;
    spec.has_seed = true;
    const auto result = run_codec_frontier(spec);
    CHECK(result.pass());
    REQUIRE(result.table.rows.size() == 2);
    const double gap256 = std::stod(result.table.rows[0][11]);
    const double gap1024 = std::stod(result.table.rows[1][11]);
    CHECK(std::stod(result.table.rows[0][7]) >= 0.99); // both k choices reliable
    CHECK(std::stod(result.table.rows[1][7]) >= 0.99);
    CHECK(gap1024 < gap256);
}

TEST_CASE("erasure experiment rejects c = 0 rows") {
    auto spec = erasure_spec();
    spec.c = {0.0};
    CHECK_THROWS_AS(run_erasure(spec), DomainError);
}

TEST_CASE("tail experiment asserts empirical under the proof bound") {
    ExperimentSpec spec;
    spec.kind = "tail";
    spec.m = {1000};
    spec.c = {1.0};
    spec.delta = {std::exp(-1.0) / 2.0};
    spec.trials = 500;
    spec.seed = 7;
    spec.has_seed = true;
    const auto result = run_distinct_tail(spec);
    CHECK(result.pass());
    REQUIRE(result.table.rows.size() == 1);
    const double empirical = std::stod(result.table.rows[0][5]);
    const double bound = std::stod(result.table.rows[0][6]);
    const double displayed = std::stod(result.table.rows[0][7]);
    CHECK(empirical <= bound);
    CHECK(displayed == doctest::Approx(bound / 2.0).epsilon(1e-9));

    spec.delta = {std::exp(-1.0) / 2.0 * 1.001}; // just outside the bound domain
    CHECK_THROWS_AS(run_distinct_tail(spec), DomainError);
}

TEST_CASE("distinct experiment tracks the analytic mean") {
    ExperimentSpec spec;
    spec.kind = "distinct";
    spec.m = {2, 1000};
    spec.c = {1.0};
    spec.trials = 400;
    spec.seed = 5;
    spec.has_seed = true;
    const auto result = run_distinct(spec);
    CHECK(result.pass());
    CHECK(result.table.rows.size() == 2);
}

TEST_CASE("codec frontier finds the reliable k") {
    ExperimentSpec spec;
    spec.kind = "codec-frontier";
    spec.m = {64};
    spec.l = {22};
    spec.w = {8};
    spec.c = {2.0};
    spec.k = {40, 64};
    spec.trials = 30;
    spec.seed = 17;
    spec.has_seed = true;
    const auto result = run_codec_frontier(spec);
    REQUIRE(result.table.rows.size() == 2);
    // k = 40 sits ~6 sigma under the mean distinct count: always succeeds
    CHECK(std::stod(result.table.rows[0][7]) == 1.0);
    // k = M needs full coverage, which essentially never happens at c=2
    CHECK(std::stod(result.table.rows[1][7]) < 0.99);
    REQUIRE(result.assertions.size() == 1);
    CHECK(result.assertions[0].pass);
    CHECK(result.assertions[0].detail.find("largest_reliable_k=40") != std::string::npos);
}

TEST_CASE("experiment output is byte-identical across reruns and threads") {
    const auto a = run_erasure(erasure_spec());
    const auto b = run_erasure(erasure_spec());
    CHECK(to_csv(a.table) == to_csv(b.table));

    const auto dir1 = testutil::scratch_dir("exp1");
    const auto dir2 = testutil::scratch_dir("exp2");
    write_experiment(a, dir1);
    write_experiment(b, dir2);
    CHECK(slurp(dir1 / "erasure.csv") == slurp(dir2 / "erasure.csv"));
    CHECK(slurp(dir1 / "summary.json").find("\"pass\": true") != std::string::npos);
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("CSV shape: header row, CRLF, comma separated") {
    const auto result = run_capacity_curve([] {
        ExperimentSpec s;
        s.kind = "capacity-curve";
        s.beta = {2.0};
        s.c = {1.0};
        return s;
    }());
    const std::string csv = to_csv(result.table);
    CHECK(csv.rfind("beta,c,capacity,bound1,bound2\r\n", 0) == 0);
    CHECK(csv.find("0.3160602794") != std::string::npos);
}
