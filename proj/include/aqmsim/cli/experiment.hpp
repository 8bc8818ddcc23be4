#ifndef AQMSIM_CLI_EXPERIMENT_HPP
#define AQMSIM_CLI_EXPERIMENT_HPP

#include "aqmsim/cli/config.hpp"
#include "aqmsim/metrics/metrics.hpp"
#include "aqmsim/sim/simulation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace aqmsim::cli {

// One simulation point of the cartesian product.
struct Combo {
    std::string discipline;
    int n_sources;
    double max_th;
    int buffer;
    std::uint64_t seed;
};

struct RunResult {
    Combo combo;
    double min_th;
    metrics::RunMetrics m;
};

enum class SweepParam { Sources, MaxTh, Buffer };

// "sources", "max_th" or "buffer"; anything else is a ConfigError.
SweepParam parse_sweep_param(std::string_view name);

// Expands discipline x sources x max_th x buffer x seeds in canonical
// (sorted) order and validates every point. use_sweep_defaults picks the
// multi-level default for the swept parameter when its list is empty.
std::vector<Combo> expand_combos(const ExperimentConfig& cfg);
std::vector<Combo> expand_combos_for_sweep(const ExperimentConfig& cfg, SweepParam param);

sim::SimConfig sim_config_for(const ExperimentConfig& cfg, const Combo& combo);

// Runs every combo on a worker pool (cfg.jobs threads, 0 = available
// parallelism) and returns results in combo order. Writes per-run trace
// files into cfg.trace_dir when set.
std::vector<RunResult> execute(const ExperimentConfig& cfg, const std::vector<Combo>& combos);

// %.6g, locale-independent.
std::string format_g6(double v);

extern const char* const kRunCsvHeader;

// Per-run CSV: metadata comment lines, fixed header, one row per combo.
std::string run_csv(const ExperimentConfig& cfg, const std::vector<RunResult>& results);

// Seed-aggregated CSV (mean and median per metric) for one swept parameter.
std::string sweep_csv(const ExperimentConfig& cfg, SweepParam param,
                      const std::vector<RunResult>& results);

struct CsvRow {
    std::string discipline;
    int n_sources = 0;
    std::uint64_t seed = 0;
    double max_th = 0, min_th = 0;
    int buffer = 0;
    double duration = 0;
    double throughput_bps = 0, relative_throughput = 0;
    double mean_qdelay_s = 0, e_avg_pkts = 0, e_q_pkts = 0, loss_ratio_pct = 0;
    bool has_qdelay = false, has_e_avg = false, has_e_q = false, has_loss = false;
};

std::vector<CsvRow> read_run_csv(std::istream& in);

// Absolute tables plus percent-change-vs-RED tables (reduction for delay
// and queue sizes, increase for loss ratio). Requires a red row for every
// (n_sources, seed, max_th, buffer) present in the input.
std::string compare_report(const std::vector<CsvRow>& rows);

std::string trace_csv(const metrics::RunMetrics& m);
std::string trace_file_name(const Combo& combo);

} // namespace aqmsim::cli

#endif
