// Command-line front end. Every stochastic subcommand takes a mandatory
// --seed; scalar results go to stdout bare (labels on stderr) with 10
// significant digits; tables are CSV. Exit codes: 0 success, 1 domain or
// runtime failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnastore/bounds.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/codec.hpp"
#include "dnastore/coupon.hpp"
#include "dnastore/errors.hpp"
#include "dnastore/experiments.hpp"
#include "dnastore/genie.hpp"
#include "dnastore/numfmt.hpp"
#include "dnastore/pool_io.hpp"

namespace {

using namespace dnastore;

std::vector<std::uint8_t> read_input_bytes(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        const std::string s = buf.str();
        return std::vector<std::uint8_t>(s.begin(), s.end());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    if (path == "-") {
        std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                        static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        return;
    }
    write_file_atomic(path, bytes);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnastore: unordered-sampling storage channel simulator and codec"};
    app.require_subcommand(1);

    // capacity --beta B --c C
    double beta = 0.0, c = 0.0;
    auto* cmd_capacity =
        app.add_subcommand("capacity", "storage capacity and the two simple bounds");
    cmd_capacity->add_option("--beta", beta)->required();
    cmd_capacity->add_option("--c", c)->required();
    cmd_capacity->callback([&] {
        const auto point = capacity_point(beta, c);
        std::cerr << "# capacity, index-genie bound (1-e^-c), type-count bound (1-1/beta)\n";
        std::cout << g10(point.capacity) << "\n"
                  << g10(point.index_genie_bound) << "\n"
                  << g10(point.type_count_bound) << "\n";
    });

    // bounds --beta B --c C [--m M --delta D --pe P]
    double b_m = 0.0, b_delta = 0.0, b_pe = 0.0;
    auto* cmd_bounds = app.add_subcommand("bounds", "converse bounds, optionally finite-M");
    cmd_bounds->add_option("--beta", beta)->required();
    cmd_bounds->add_option("--c", c)->required();
    auto* opt_m = cmd_bounds->add_option("--m", b_m);
    auto* opt_delta = cmd_bounds->add_option("--delta", b_delta);
    auto* opt_pe = cmd_bounds->add_option("--pe", b_pe);
    cmd_bounds->callback([&] {
        const bool finite = *opt_m || *opt_delta || *opt_pe;
        if (finite && !(*opt_m && *opt_delta && *opt_pe))
            throw DomainError("bounds: finite-M form needs all of --m, --delta, --pe");
        std::cerr << "# index-genie bound, type-count bound"
                  << (finite ? ", finite-M rate bound" : "") << "\n";
        std::cout << g10(index_genie_bound(c)) << "\n"
                  << g10(type_count_bound(beta)) << "\n";
        if (finite)
            std::cout << g10(rate_upper_bound_finite_M(b_m, beta, c, b_delta, b_pe).value)
                      << "\n";
    });

    // typecount --a A --b B [--exact|--log-bound|--enumerate]
    std::uint64_t tc_a = 0, tc_b = 0;
    bool tc_exact = false, tc_log = false, tc_enum = false;
    auto* cmd_typecount =
        app.add_subcommand("typecount", "count or enumerate nonnegative vectors with fixed l1");
    cmd_typecount->add_option("--a", tc_a)->required();
    cmd_typecount->add_option("--b", tc_b)->required();
    cmd_typecount->add_flag("--exact", tc_exact);
    cmd_typecount->add_flag("--log-bound", tc_log);
    cmd_typecount->add_flag("--enumerate", tc_enum);
    cmd_typecount->callback([&] {
        if (tc_exact + tc_log + tc_enum > 1)
            throw CLI::ValidationError("typecount",
                                       "--exact, --log-bound, --enumerate are exclusive");
        if (tc_log) {
            std::cerr << "# ln of the exponential upper bound on T[a,b]\n";
            std::cout << g10(type_count_upper_log(tc_a, tc_b)) << "\n";
        } else if (tc_enum) {
            std::cerr << "# all vectors in Z_+^a with l1 = b, lexicographic\n";
            for (const auto& type : enumerate_types(tc_a, tc_b)) {
                for (std::size_t i = 0; i < type.size(); ++i)
                    std::cout << (i ? " " : "") << type[i];
                std::cout << "\n";
            }
        } else {
            std::cerr << "# T[a,b] = C(a+b-1, b)\n";
            std::cout << type_count_exact(tc_a, tc_b).to_string() << "\n";
        }
    });

    // coupon --m M --c C --trials T --seed S [--delta D ...] [--csv file]
    std::uint64_t cp_m = 0, cp_trials = 0, cp_seed = 0;
    std::vector<double> cp_deltas;
    std::string cp_csv;
    auto* cmd_coupon = app.add_subcommand("coupon", "distinct-coupon Monte Carlo summary");
    cmd_coupon->add_option("--m", cp_m)->required();
    cmd_coupon->add_option("--c", c)->required();
    cmd_coupon->add_option("--trials", cp_trials)->required();
    cmd_coupon->add_option("--seed", cp_seed)->required();
    cmd_coupon->add_option("--delta", cp_deltas);
    cmd_coupon->add_option("--csv", cp_csv);
    cmd_coupon->callback([&] {
        const auto s = simulate_distinct(cp_m, c, cp_trials, cp_seed, cp_deltas);
        if (!cp_csv.empty()) {
            std::string csv = "trial,M,N,Q,fraction\r\n";
            for (std::uint64_t t = 0; t < s.trials; ++t) {
                const double fraction = static_cast<double>(s.distinct_counts[t]) /
                                        static_cast<double>(s.m);
                csv += u64str(t) + "," + u64str(s.m) + "," + u64str(s.n) + "," +
                       u64str(s.distinct_counts[t]) + "," + g10(fraction) + "\r\n";
            }
            write_file_atomic(cp_csv, std::vector<std::uint8_t>(csv.begin(), csv.end()));
        }
        nlohmann::json j;
        j["m"] = s.m;
        j["n"] = s.n;
        j["trials"] = s.trials;
        j["mean"] = s.mean_fraction;
        j["std"] = s.sample_std;
        j["tails"] = nlohmann::json::array();
        for (const auto& tail : s.tails)
            j["tails"].push_back({{"delta", tail.delta},
                                  {"empirical", tail.empirical},
                                  {"bound", tail.bound}});
        std::cout << j.dump(2) << "\n";
    });

    // tail --m M --c C --delta D [--displayed-form]
    std::uint64_t tl_m = 0;
    double tl_delta = 0.0;
    bool tl_displayed = false;
    auto* cmd_tail = app.add_subcommand("tail", "Chebyshev bound on the distinct-count tail");
    cmd_tail->add_option("--m", tl_m)->required();
    cmd_tail->add_option("--c", c)->required();
    cmd_tail->add_option("--delta", tl_delta)->required();
    cmd_tail->add_flag("--displayed-form", tl_displayed);
    cmd_tail->callback([&] {
        std::cerr << "# P(Q >= (1-e^-c+delta)M) upper bound\n";
        std::cout << g10(chebyshev_tail_bound(TailBoundInputs{tl_m, c, tl_delta},
                                              tl_displayed))
                  << "\n";
    });

    // encode --config cfg.json --in data --out pool.dnap
    std::string io_config, io_in = "-", io_out;
    auto* cmd_encode = app.add_subcommand("encode", "encode bytes into a molecule pool");
    cmd_encode->add_option("--config", io_config)->required();
    cmd_encode->add_option("--in", io_in);
    cmd_encode->add_option("--out", io_out)->required();
    cmd_encode->callback([&] {
        const auto config = codec_config_from_json(read_text_file(io_config));
        const auto data = read_input_bytes(io_in);
        write_pool(io_out, encode(data, config));
    });

    // decode --config cfg.json --in samples.dnas --out data
    std::string dec_in;
    std::string dec_out = "-";
    auto* cmd_decode = app.add_subcommand("decode", "recover bytes from sampled molecules");
    cmd_decode->add_option("--config", io_config)->required();
    cmd_decode->add_option("--in", dec_in)->required();
    cmd_decode->add_option("--out", dec_out);
    cmd_decode->callback([&] {
        const auto config = codec_config_from_json(read_text_file(io_config));
        // A pool file is accepted as a degenerate sample set.
        std::ifstream probe(dec_in, std::ios::binary);
        if (!probe)
            throw FormatError("cannot open " + dec_in);
        char magic[4] = {};
        probe.read(magic, 4);
        probe.close();
        std::vector<Molecule> molecules;
        if (std::string(magic, 4) == "DNAS")
            molecules = read_samples(dec_in).draws;
        else
            molecules = read_pool(dec_in).molecules;
        write_output_bytes(dec_out, decode(molecules, config));
    });

    // channel --in pool.dnap --c C --seed S --out samples.dnas [--genie]
    std::uint64_t ch_seed = 0;
    bool ch_genie = false;
    std::string ch_in, ch_out;
    auto* cmd_channel =
        app.add_subcommand("channel", "sample a pool with replacement at coverage c");
    cmd_channel->add_option("--in", ch_in)->required();
    cmd_channel->add_option("--c", c)->required();
    cmd_channel->add_option("--seed", ch_seed)->required();
    cmd_channel->add_option("--out", ch_out)->required();
    cmd_channel->add_flag("--genie", ch_genie);
    cmd_channel->callback([&] {
        const auto pool = read_pool(ch_in, c);
        const SampleSet samples = ch_genie
                                      ? sample_tagged(tag_pool(pool), ch_seed)
                                      : sample_with_replacement(pool, ch_seed);
        write_samples(ch_out, samples);
        std::cerr << "# wrote " << samples.draws.size() << " draws"
                  << (ch_genie ? " (genie-tagged)" : "") << "\n";
    });

    // experiment --spec spec.json --out dir/
    std::string ex_spec, ex_out;
    auto* cmd_experiment = app.add_subcommand("experiment", "run a spec and emit CSV + summary");
    cmd_experiment->add_option("--spec", ex_spec)->required();
    cmd_experiment->add_option("--out", ex_out)->required();
    cmd_experiment->callback([&] {
        const auto spec = spec_from_json_text(read_text_file(ex_spec));
        const auto result = run_experiment(spec);
        write_experiment(result, ex_out);
        for (const auto& a : result.assertions)
            std::cerr << (a.pass ? "pass" : "FAIL") << "  " << a.name << "  " << a.detail
                      << "\n";
        if (!result.pass())
            throw Error("experiment assertions failed (see summary.json)");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
