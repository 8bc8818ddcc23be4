#include "aqmsim/cli/config.hpp"
#include "aqmsim/cli/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using aqmsim::cli::ConfigError;
using aqmsim::cli::ExperimentConfig;

void add_experiment_options(CLI::App* app, ExperimentConfig& cfg, std::string& config_path) {
    app->add_option("--config", config_path, "flat key=value config file (applied before flags)")
        ->type_name("FILE");
    app->add_option("--scheme", cfg.disciplines, "disciplines to simulate")->delimiter(',');
    app->add_option("--sources", cfg.sources, "number of FTP sources (list)")->delimiter(',');
    app->add_option("--seeds", cfg.seeds, "RNG seeds (list)")->delimiter(',');
    app->add_option("--duration", cfg.duration_s, "simulated seconds per run");
    app->add_option("--max-th", cfg.max_ths, "upper average-queue threshold (list)")
        ->delimiter(',');
    app->add_option("--min-th", cfg.min_th, "lower threshold (default max_th/3)");
    app->add_option("--buffer", cfg.buffers, "router buffer capacity, packets (list)")
        ->delimiter(',');
    app->add_option("--wq", cfg.w_q, "EWMA weight");
    app->add_option("--maxp", cfg.max_p, "maximum base drop probability");
    app->add_option("--x-factor", cfg.x_factor, "mid_th initialization factor in [1,3]");
    app->add_option("--sample-interval", cfg.sample_interval_s, "EWMA sampling clock, seconds");
    app->add_option("--above-mid-mode", cfg.above_mid_mode,
                    "AQMRD behavior above mid_th: unit_prob | p2_fallback");
    app->add_option("--bandwidth", cfg.bandwidth_bps, "bottleneck bandwidth, bit/s");
    app->add_option("--bottleneck-delay", cfg.bottleneck_delay_s,
                    "one-way bottleneck propagation, seconds");
    app->add_option("--access-bw", cfg.access_bw_bps, "access link bandwidth, bit/s");
    app->add_option("--cwnd-cap", cfg.cwnd_cap, "per-flow congestion window cap, packets");
    app->add_option("--packet-size", cfg.packet_size, "packet size, bytes");
    app->add_option("--start-jitter", cfg.start_jitter_s, "max source start jitter, seconds");
    app->add_option("--jobs", cfg.jobs, "worker threads (0 = available parallelism)");
    app->add_option("--out", cfg.out, "output CSV path (default stdout)");
    app->add_option("--trace", cfg.trace_dir, "directory for per-run tick traces");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

// The config file must apply before flag values regardless of where
// --config sits on the command line, so it is pulled out up front.
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic dumbbell-topology AQM experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path_opt;
    std::string sweep_param;
    std::string compare_in;
    std::string compare_out;

    CLI::App* run = app.add_subcommand("run", "simulate every configured combination");
    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter, aggregating over seeds");
    CLI::App* compare = app.add_subcommand("compare", "build comparison tables from a run CSV");

    add_experiment_options(run, cfg, config_path_opt);
    add_experiment_options(sweep, cfg, config_path_opt);
    sweep->add_option("--param", sweep_param, "sources | max_th | buffer")->required();
    compare->add_option("--in", compare_in, "run CSV to compare")->required();
    compare->add_option("--out", compare_out, "report path (default stdout)");

    try {
        const std::string config_path = find_config_arg(argc, argv);
        if (!config_path.empty()) aqmsim::cli::apply_config_file(cfg, config_path);
        app.parse(argc, argv);

        if (run->parsed()) {
            const auto combos = aqmsim::cli::expand_combos(cfg);
            const auto results = aqmsim::cli::execute(cfg, combos);
            write_output(cfg.out, aqmsim::cli::run_csv(cfg, results));
        } else if (sweep->parsed()) {
            const auto param = aqmsim::cli::parse_sweep_param(sweep_param);
            const auto combos = aqmsim::cli::expand_combos_for_sweep(cfg, param);
            const auto results = aqmsim::cli::execute(cfg, combos);
            write_output(cfg.out, aqmsim::cli::sweep_csv(cfg, param, results));
        } else if (compare->parsed()) {
            std::ifstream in(compare_in);
            if (!in) throw ConfigError("cannot open input CSV: " + compare_in);
            const auto rows = aqmsim::cli::read_run_csv(in);
            write_output(compare_out, aqmsim::cli::compare_report(rows));
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
