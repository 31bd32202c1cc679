#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dnastore {

// Monte Carlo harness. A spec names one experiment kind plus its grid; the
// result is a CSV table (10 significant digits, reruns are byte-identical)
// and a summary with self-contained assertions.
struct ExperimentSpec {
    std::string kind; // erasure | distinct | tail | codec-frontier | capacity-curve
    std::vector<std::uint64_t> m;
    std::vector<std::uint32_t> l; // frontier: parallel to m
    std::vector<unsigned> w;      // frontier: parallel to m
    std::vector<double> beta;
    std::vector<double> c;
    std::vector<double> delta;
    std::vector<std::uint64_t> k;
    bool use_suggested_k = false; // frontier: add the 3-sigma k per config
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out; // optional CSV basename override

    void validate() const;
};

ExperimentSpec spec_from_json_text(const std::string& text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentResult {
    std::string kind;
    std::string csv_name;
    Table table;
    std::vector<Assertion> assertions;

    bool pass() const;
};

ExperimentResult run_erasure(const ExperimentSpec& spec);
ExperimentResult run_distinct(const ExperimentSpec& spec);
ExperimentResult run_distinct_tail(const ExperimentSpec& spec);
ExperimentResult run_codec_frontier(const ExperimentSpec& spec);
ExperimentResult run_capacity_curve(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string to_csv(const Table& table);
std::string summary_json_text(const ExperimentResult& result);

// Writes <kind>.csv (or the spec override) and summary.json into outdir via
// temp-and-rename.
void write_experiment(const ExperimentResult& result,
                      const std::filesystem::path& outdir);

} // namespace dnastore
