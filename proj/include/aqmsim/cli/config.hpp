#ifndef AQMSIM_CLI_CONFIG_HPP
#define AQMSIM_CLI_CONFIG_HPP

#include "aqmsim/aqm/discipline.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aqmsim::cli {

// Invalid experiment input; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment description. List parameters left empty take verb-specific
// defaults at resolution time; precedence is CLI flags over config file
// over defaults.
struct ExperimentConfig {
    std::vector<std::string> disciplines; // required
    std::vector<int> sources;
    std::vector<std::uint64_t> seeds;
    std::vector<double> max_ths;
    std::vector<int> buffers;

    double duration_s = 100.0;
    std::optional<double> min_th; // default: max_th / 3
    double w_q = 0.002;
    double max_p = 0.1;
    double x_factor = 2.0;
    double sample_interval_s = 0.010;
    std::string above_mid_mode = "unit_prob";

    double bandwidth_bps = 20e6;
    double bottleneck_delay_s = 0.033;
    double access_bw_bps = 100e6;
    double cwnd_cap = 200.0;
    int packet_size = 1000;
    double start_jitter_s = 1.0;

    int jobs = 0; // 0 = available parallelism
    std::string out;
    std::string trace_dir;

    aqm::DisciplineTuning tuning{};
};

aqm::AboveMidMode parse_above_mid_mode(std::string_view text);

// Applies one key=value assignment; throws ConfigError naming the key on
// unknown keys or unparsable values.
void apply_key_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Flat key=value file; '#' starts a comment, blank lines are skipped.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Default levels used when the corresponding list is left empty.
const std::vector<int>& default_source_sweep();
const std::vector<double>& default_max_th_sweep();
const std::vector<int>& default_buffer_sweep();

} // namespace aqmsim::cli

#endif
