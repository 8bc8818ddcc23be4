#include "aqmsim/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace aqmsim::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_list(std::string_view key, std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (item.empty())
            throw ConfigError("empty element in list for '" + std::string(key) + "'");
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ConfigError("empty list for '" + std::string(key) + "'");
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    try {
        std::size_t pos = 0;
        const std::string s(trim(value));
        const double d = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing garbage");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number for '" + std::string(key) + "': " +
                          std::string(value));
    }
}

template <typename Int> Int parse_int(std::string_view key, std::string_view value) {
    const std::string_view s = trim(value);
    Int result{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), result);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("cannot parse integer for '" + std::string(key) + "': " +
                          std::string(value));
    return result;
}

template <typename Int>
std::vector<Int> parse_int_list(std::string_view key, std::string_view value) {
    std::vector<Int> out;
    for (const auto& item : split_list(key, value)) out.push_back(parse_int<Int>(key, item));
    return out;
}

std::vector<double> parse_double_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (const auto& item : split_list(key, value)) out.push_back(parse_double(key, item));
    return out;
}

} // namespace

aqm::AboveMidMode parse_above_mid_mode(std::string_view text) {
    if (text == "unit_prob") return aqm::AboveMidMode::UnitProb;
    if (text == "p2_fallback") return aqm::AboveMidMode::P2Fallback;
    throw ConfigError("above_mid_mode must be 'unit_prob' or 'p2_fallback', got '" +
                      std::string(text) + "'");
}

void apply_key_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "scheme" || key == "schemes" || key == "discipline")
        cfg.disciplines = split_list(key, value);
    else if (key == "sources")
        cfg.sources = parse_int_list<int>(key, value);
    else if (key == "seeds")
        cfg.seeds = parse_int_list<std::uint64_t>(key, value);
    else if (key == "max_th")
        cfg.max_ths = parse_double_list(key, value);
    else if (key == "buffer")
        cfg.buffers = parse_int_list<int>(key, value);
    else if (key == "duration")
        cfg.duration_s = parse_double(key, value);
    else if (key == "min_th")
        cfg.min_th = parse_double(key, value);
    else if (key == "wq")
        cfg.w_q = parse_double(key, value);
    else if (key == "maxp")
        cfg.max_p = parse_double(key, value);
    else if (key == "x_factor")
        cfg.x_factor = parse_double(key, value);
    else if (key == "sample_interval")
        cfg.sample_interval_s = parse_double(key, value);
    else if (key == "above_mid_mode") {
        cfg.above_mid_mode = std::string(trim(value));
        parse_above_mid_mode(cfg.above_mid_mode); // validate early
    }
    else if (key == "bandwidth")
        cfg.bandwidth_bps = parse_double(key, value);
    else if (key == "bottleneck_delay")
        cfg.bottleneck_delay_s = parse_double(key, value);
    else if (key == "access_bw")
        cfg.access_bw_bps = parse_double(key, value);
    else if (key == "cwnd_cap")
        cfg.cwnd_cap = parse_double(key, value);
    else if (key == "packet_size")
        cfg.packet_size = parse_int<int>(key, value);
    else if (key == "start_jitter")
        cfg.start_jitter_s = parse_double(key, value);
    else if (key == "jobs")
        cfg.jobs = parse_int<int>(key, value);
    else if (key == "out")
        cfg.out = std::string(trim(value));
    else if (key == "trace")
        cfg.trace_dir = std::string(trim(value));
    else if (key == "rem_gamma")
        cfg.tuning.rem.gamma = parse_double(key, value);
    else if (key == "rem_alpha")
        cfg.tuning.rem.alpha = parse_double(key, value);
    else if (key == "rem_phi")
        cfg.tuning.rem.phi = parse_double(key, value);
    else if (key == "rem_qref")
        cfg.tuning.rem.q_ref = parse_double(key, value);
    else if (key == "rem_interval")
        cfg.tuning.rem.interval_s = parse_double(key, value);
    else if (key == "rem_capacity_pps")
        cfg.tuning.rem.capacity_pps = parse_double(key, value);
    else if (key == "pi_a")
        cfg.tuning.pi.a = parse_double(key, value);
    else if (key == "pi_b")
        cfg.tuning.pi.b = parse_double(key, value);
    else if (key == "pi_hz")
        cfg.tuning.pi.hz = parse_double(key, value);
    else if (key == "pi_qref")
        cfg.tuning.pi.q_ref = parse_double(key, value);
    else if (key == "ared_interval")
        cfg.tuning.ared.interval_s = parse_double(key, value);
    else if (key == "ared_min_maxp")
        cfg.tuning.ared.min_max_p = parse_double(key, value);
    else if (key == "ared_max_maxp")
        cfg.tuning.ared.max_max_p = parse_double(key, value);
    else if (key == "sfq_buckets")
        cfg.tuning.sfq.buckets = parse_int<int>(key, value);
    else if (key == "sfq_perturb")
        cfg.tuning.sfq.perturb_interval_s = parse_double(key, value);
    else
        throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const auto key = trim(s.substr(0, eq));
        const auto value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": missing key");
        apply_key_value(cfg, key, value);
    }
}

const std::vector<int>& default_source_sweep() {
    static const std::vector<int> v = {12, 25, 37, 50, 62, 75, 87, 100};
    return v;
}

const std::vector<double>& default_max_th_sweep() {
    static const std::vector<double> v = {18, 24, 30, 36, 42, 48};
    return v;
}

const std::vector<int>& default_buffer_sweep() {
    static const std::vector<int> v = {40, 60, 80, 100, 120, 140, 160};
    return v;
}

} // namespace aqmsim::cli
