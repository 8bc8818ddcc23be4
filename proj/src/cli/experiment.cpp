#include "aqmsim/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace aqmsim::cli {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv1a(std::uint64_t& h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= '|';
    h *= kFnvPrime;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::vector<int> resolved_or(std::vector<int> v, const std::vector<int>& fallback) {
    if (v.empty()) v = fallback;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> resolved_or(std::vector<double> v, const std::vector<double>& fallback) {
    if (v.empty()) v = fallback;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::uint64_t> resolved_seeds(std::vector<std::uint64_t> v) {
    if (v.empty()) v = {1, 2, 3, 4, 5};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<Combo> build_combos(const ExperimentConfig& cfg, const std::vector<int>& sources,
                                const std::vector<double>& max_ths,
                                const std::vector<int>& buffers) {
    if (cfg.disciplines.empty())
        throw ConfigError("no discipline specified (use --scheme or scheme=...)");
    std::vector<std::string> disciplines = cfg.disciplines;
    std::sort(disciplines.begin(), disciplines.end());
    disciplines.erase(std::unique(disciplines.begin(), disciplines.end()), disciplines.end());

    const auto seeds = resolved_seeds(cfg.seeds);
    std::vector<Combo> combos;
    combos.reserve(disciplines.size() * sources.size() * max_ths.size() * buffers.size() *
                   seeds.size());
    for (const auto& d : disciplines)
        for (int n : sources)
            for (double mt : max_ths)
                for (int b : buffers)
                    for (std::uint64_t s : seeds) combos.push_back(Combo{d, n, mt, b, s});
    return combos;
}

void validate_combos(const ExperimentConfig& cfg, const std::vector<Combo>& combos) {
    try {
        if (!(cfg.duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
        for (const auto& c : combos) {
            const auto sc = sim_config_for(cfg, c);
            if (sc.n_sources < 1) throw std::invalid_argument("sources must be at least 1");
            if (sc.packet_size_bytes < 1)
                throw std::invalid_argument("packet_size must be positive");
            sc.gw.validate();
            sc.link.validate();
            aqm::make_discipline(sc.discipline, sc.gw, sc.tuning);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::uint64_t config_hash(const ExperimentConfig& cfg, const std::vector<Combo>& combos) {
    std::uint64_t h = kFnvOffset;
    auto num = [&](double v) { fnv1a(h, format_g6(v)); };
    for (const auto& c : combos) {
        fnv1a(h, c.discipline);
        num(c.n_sources);
        num(c.max_th);
        num(c.buffer);
        num(static_cast<double>(c.seed));
    }
    num(cfg.duration_s);
    num(cfg.min_th.value_or(-1.0));
    num(cfg.w_q);
    num(cfg.max_p);
    num(cfg.x_factor);
    num(cfg.sample_interval_s);
    fnv1a(h, cfg.above_mid_mode);
    num(cfg.bandwidth_bps);
    num(cfg.bottleneck_delay_s);
    num(cfg.access_bw_bps);
    num(cfg.cwnd_cap);
    num(cfg.packet_size);
    num(cfg.start_jitter_s);
    num(cfg.tuning.rem.gamma);
    num(cfg.tuning.rem.alpha);
    num(cfg.tuning.rem.phi);
    num(cfg.tuning.rem.q_ref);
    num(cfg.tuning.rem.interval_s);
    num(cfg.tuning.rem.capacity_pps);
    num(cfg.tuning.pi.a);
    num(cfg.tuning.pi.b);
    num(cfg.tuning.pi.hz);
    num(cfg.tuning.pi.q_ref);
    num(cfg.tuning.ared.interval_s);
    num(cfg.tuning.sfq.buckets);
    num(cfg.tuning.sfq.perturb_interval_s);
    return h;
}

std::string seeds_string(const std::vector<Combo>& combos) {
    std::vector<std::uint64_t> seeds;
    for (const auto& c : combos) seeds.push_back(c.seed);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::string out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(seeds[i]);
    }
    return out;
}

std::string metadata_block(const ExperimentConfig& cfg, const std::vector<Combo>& combos) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg, combos)));
    std::string out;
    out += "# config_hash=";
    out += hash;
    out += "\n# seeds=";
    out += seeds_string(combos);
    out += "\n# above_mid_mode=";
    out += cfg.above_mid_mode;
    out += "\n";
    return out;
}

std::string opt_g6(const std::optional<double>& v) {
    return v ? format_g6(*v) : std::string();
}

struct MetricColumn {
    const char* name;
    std::function<std::optional<double>(const ExperimentConfig&, const RunResult&)> get;
};

const MetricColumn kMetricColumns[] = {
    {"throughput_bps",
     [](const ExperimentConfig&, const RunResult& r) {
         return std::optional<double>(metrics::throughput_bps(r.m));
     }},
    {"relative_throughput",
     [](const ExperimentConfig& cfg, const RunResult& r) {
         return std::optional<double>(metrics::relative_throughput(r.m, cfg.bandwidth_bps));
     }},
    {"mean_qdelay_s",
     [](const ExperimentConfig&, const RunResult& r) { return metrics::mean_queuing_delay_s(r.m); }},
    {"e_avg_pkts",
     [](const ExperimentConfig&, const RunResult& r) { return metrics::e_avg_pkts(r.m); }},
    {"e_q_pkts",
     [](const ExperimentConfig&, const RunResult& r) { return metrics::e_queue_pkts(r.m); }},
    {"loss_ratio_pct",
     [](const ExperimentConfig&, const RunResult& r) { return metrics::loss_ratio_pct(r.m); }},
};

} // namespace

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "sources") return SweepParam::Sources;
    if (name == "max_th") return SweepParam::MaxTh;
    if (name == "buffer") return SweepParam::Buffer;
    throw ConfigError("unknown sweep parameter '" + std::string(name) +
                      "' (expected sources, max_th or buffer)");
}

std::vector<Combo> expand_combos(const ExperimentConfig& cfg) {
    auto combos = build_combos(cfg, resolved_or(cfg.sources, {25}), resolved_or(cfg.max_ths, {48.0}),
                               resolved_or(cfg.buffers, {64}));
    validate_combos(cfg, combos);
    return combos;
}

std::vector<Combo> expand_combos_for_sweep(const ExperimentConfig& cfg, SweepParam param) {
    auto require_single = [](std::size_t n, const char* name) {
        if (n > 1)
            throw ConfigError(std::string("sweep expects a single value for '") + name + "'");
    };
    std::vector<int> sources = resolved_or(cfg.sources, {25});
    std::vector<double> max_ths = resolved_or(cfg.max_ths, {48.0});
    std::vector<int> buffers = resolved_or(cfg.buffers, {64});
    switch (param) {
    case SweepParam::Sources:
        sources = resolved_or(cfg.sources, default_source_sweep());
        require_single(max_ths.size(), "max_th");
        require_single(buffers.size(), "buffer");
        break;
    case SweepParam::MaxTh:
        max_ths = resolved_or(cfg.max_ths, default_max_th_sweep());
        require_single(sources.size(), "sources");
        require_single(buffers.size(), "buffer");
        break;
    case SweepParam::Buffer:
        buffers = resolved_or(cfg.buffers, default_buffer_sweep());
        require_single(sources.size(), "sources");
        require_single(max_ths.size(), "max_th");
        break;
    }
    auto combos = build_combos(cfg, sources, max_ths, buffers);
    validate_combos(cfg, combos);
    return combos;
}

sim::SimConfig sim_config_for(const ExperimentConfig& cfg, const Combo& combo) {
    sim::SimConfig sc;
    sc.discipline = combo.discipline;
    sc.n_sources = combo.n_sources;
    sc.seed = combo.seed;
    sc.duration_s = cfg.duration_s;
    sc.gw.w_q = cfg.w_q;
    sc.gw.max_p = cfg.max_p;
    sc.gw.max_th = combo.max_th;
    sc.gw.min_th = cfg.min_th.value_or(combo.max_th / 3.0);
    sc.gw.buffer_capacity = combo.buffer;
    sc.gw.x = cfg.x_factor;
    sc.gw.sample_interval = cfg.sample_interval_s;
    sc.gw.above_mid_mode = parse_above_mid_mode(cfg.above_mid_mode);
    sc.link.bottleneck_bw_bps = cfg.bandwidth_bps;
    sc.link.bottleneck_prop_s = cfg.bottleneck_delay_s;
    sc.link.access_bw_bps = cfg.access_bw_bps;
    sc.tuning = cfg.tuning;
    sc.packet_size_bytes = cfg.packet_size;
    sc.cwnd_cap = cfg.cwnd_cap;
    sc.start_jitter_max_s = cfg.start_jitter_s;
    sc.record_trace = !cfg.trace_dir.empty();
    return sc;
}

std::vector<RunResult> execute(const ExperimentConfig& cfg, const std::vector<Combo>& combos) {
    validate_combos(cfg, combos);
    if (!cfg.trace_dir.empty()) std::filesystem::create_directories(cfg.trace_dir);

    std::vector<RunResult> results(combos.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mu;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= combos.size()) return;
            try {
                const auto sc = sim_config_for(cfg, combos[i]);
                sim::Simulation simulation(sc);
                auto m = simulation.run(cfg.duration_s);
                if (!cfg.trace_dir.empty()) {
                    const auto path =
                        std::filesystem::path(cfg.trace_dir) / trace_file_name(combos[i]);
                    std::ofstream out(path);
                    if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
                    out << trace_csv(m);
                }
                results[i] = RunResult{combos[i], sc.gw.min_th, std::move(m)};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, combos.size() == 0 ? 1 : combos.size());
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* const kRunCsvHeader =
    "discipline,n_sources,seed,max_th,min_th,buffer,duration,throughput_bps,"
    "relative_throughput,mean_qdelay_s,e_avg_pkts,e_q_pkts,loss_ratio_pct";

std::string run_csv(const ExperimentConfig& cfg, const std::vector<RunResult>& results) {
    std::vector<Combo> combos;
    combos.reserve(results.size());
    for (const auto& r : results) combos.push_back(r.combo);

    std::string out = metadata_block(cfg, combos);
    out += kRunCsvHeader;
    out += '\n';
    for (const auto& r : results) {
        out += r.combo.discipline;
        out += ',' + std::to_string(r.combo.n_sources);
        out += ',' + std::to_string(r.combo.seed);
        out += ',' + format_g6(r.combo.max_th);
        out += ',' + format_g6(r.min_th);
        out += ',' + std::to_string(r.combo.buffer);
        out += ',' + format_g6(r.m.duration_s);
        for (const auto& col : kMetricColumns) {
            out += ',';
            out += opt_g6(col.get(cfg, r));
        }
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const ExperimentConfig& cfg, SweepParam param,
                      const std::vector<RunResult>& results) {
    const char* param_name = param == SweepParam::Sources ? "sources"
                             : param == SweepParam::MaxTh ? "max_th"
                                                          : "buffer";
    auto value_of = [&](const Combo& c) -> double {
        switch (param) {
        case SweepParam::Sources: return c.n_sources;
        case SweepParam::MaxTh: return c.max_th;
        default: return c.buffer;
        }
    };

    // (discipline, value) -> per-seed results; keys iterate in sorted order
    std::map<std::pair<std::string, double>, std::vector<const RunResult*>> groups;
    for (const auto& r : results) groups[{r.combo.discipline, value_of(r.combo)}].push_back(&r);

    std::vector<Combo> combos;
    combos.reserve(results.size());
    for (const auto& r : results) combos.push_back(r.combo);

    std::string out = metadata_block(cfg, combos);
    out += "discipline,param,value,seeds";
    for (const auto& col : kMetricColumns) {
        out += ',';
        out += col.name;
        out += "_mean,";
        out += col.name;
        out += "_median";
    }
    out += '\n';

    for (const auto& [key, rs] : groups) {
        out += key.first;
        out += ',';
        out += param_name;
        out += ',' + format_g6(key.second);
        out += ',' + std::to_string(rs.size());
        for (const auto& col : kMetricColumns) {
            std::vector<double> vals;
            for (const auto* r : rs)
                if (auto v = col.get(cfg, *r)) vals.push_back(*v);
            out += ',';
            if (!vals.empty()) {
                out += format_g6(mean_of(vals));
                out += ',' + format_g6(median_of(vals));
            } else {
                out += ',';
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<CsvRow> read_run_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line != kRunCsvHeader)
                throw ConfigError("unexpected CSV header; expected: " +
                                  std::string(kRunCsvHeader));
            have_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (start <= line.size()) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 13)
            throw ConfigError("malformed CSV row (expected 13 fields): " + line);
        auto opt_field = [&](std::size_t i, double& value, bool& present) {
            present = !fields[i].empty();
            if (present) value = std::stod(fields[i]);
        };
        CsvRow r;
        r.discipline = fields[0];
        r.n_sources = std::stoi(fields[1]);
        r.seed = std::stoull(fields[2]);
        r.max_th = std::stod(fields[3]);
        r.min_th = std::stod(fields[4]);
        r.buffer = std::stoi(fields[5]);
        r.duration = std::stod(fields[6]);
        r.throughput_bps = std::stod(fields[7]);
        r.relative_throughput = std::stod(fields[8]);
        opt_field(9, r.mean_qdelay_s, r.has_qdelay);
        opt_field(10, r.e_avg_pkts, r.has_e_avg);
        opt_field(11, r.e_q_pkts, r.has_e_q);
        opt_field(12, r.loss_ratio_pct, r.has_loss);
        rows.push_back(std::move(r));
    }
    if (!have_header) throw ConfigError("input CSV has no header row");
    return rows;
}

namespace {

struct GroupKey {
    double max_th;
    int buffer;
    bool operator<(const GroupKey& o) const {
        return max_th != o.max_th ? max_th < o.max_th : buffer < o.buffer;
    }
};

struct CellKey {
    std::string discipline;
    int n;
    bool operator<(const CellKey& o) const {
        return discipline != o.discipline ? discipline < o.discipline : n < o.n;
    }
};

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

std::string pad_left(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

} // namespace

std::string compare_report(const std::vector<CsvRow>& rows) {
    if (rows.empty()) throw ConfigError("no rows to compare");

    std::map<GroupKey, std::vector<const CsvRow*>> groups;
    for (const auto& r : rows) groups[{r.max_th, r.buffer}].push_back(&r);

    std::string out;
    out += "Medians over seeds; percent changes are relative to RED.\n";

    for (const auto& [gk, grows] : groups) {
        // every (N, seed) present must have a RED baseline row
        std::map<std::pair<int, std::uint64_t>, bool> red_present;
        for (const auto* r : grows)
            if (r->discipline == "red") red_present[{r->n_sources, r->seed}] = true;
        for (const auto* r : grows)
            if (!red_present.count({r->n_sources, r->seed}))
                throw ConfigError("missing RED baseline row for N=" +
                                  std::to_string(r->n_sources) + " seed=" +
                                  std::to_string(r->seed) + " (needed to compare " +
                                  r->discipline + ")");

        std::vector<int> ns;
        std::vector<std::string> disciplines;
        for (const auto* r : grows) {
            ns.push_back(r->n_sources);
            disciplines.push_back(r->discipline);
        }
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        std::sort(disciplines.begin(), disciplines.end());
        disciplines.erase(std::unique(disciplines.begin(), disciplines.end()),
                          disciplines.end());
        // list RED first, like the reference tables
        if (auto it = std::find(disciplines.begin(), disciplines.end(), "red");
            it != disciplines.end())
            std::rotate(disciplines.begin(), it, it + 1);

        struct Metric {
            const char* title;
            const char* change_title;
            bool change_is_increase;
            std::function<std::optional<double>(const CsvRow&)> get;
        };
        const Metric metric_defs[] = {
            {"Throughput (bit/s)", nullptr, false,
             [](const CsvRow& r) { return std::optional<double>(r.throughput_bps); }},
            {"Relative throughput", nullptr, false,
             [](const CsvRow& r) { return std::optional<double>(r.relative_throughput); }},
            {"E[Queuing Delay] (s)", "Reduction in E[Queuing Delay] vs RED (%)", false,
             [](const CsvRow& r) {
                 return r.has_qdelay ? std::optional<double>(r.mean_qdelay_s) : std::nullopt;
             }},
            {"E[Average Queue Size] (packets)",
             "Reduction in E[Average Queue Size] vs RED (%)", false,
             [](const CsvRow& r) {
                 return r.has_e_avg ? std::optional<double>(r.e_avg_pkts) : std::nullopt;
             }},
            {"E[Instantaneous Queue Size] (packets)",
             "Reduction in E[Instantaneous Queue Size] vs RED (%)", false,
             [](const CsvRow& r) {
                 return r.has_e_q ? std::optional<double>(r.e_q_pkts) : std::nullopt;
             }},
            {"Average Loss-ratio (%)", "Increase in Average Loss-ratio vs RED (%)", true,
             [](const CsvRow& r) {
                 return r.has_loss ? std::optional<double>(r.loss_ratio_pct) : std::nullopt;
             }},
        };

        out += "\n=== max_th=" + format_g6(gk.max_th) + " buffer=" + std::to_string(gk.buffer) +
               " ===\n";

        for (const auto& metric : metric_defs) {
            // median per (discipline, N)
            std::map<CellKey, std::optional<double>> cell;
            for (const auto& d : disciplines)
                for (int n : ns) {
                    std::vector<double> vals;
                    for (const auto* r : grows)
                        if (r->discipline == d && r->n_sources == n)
                            if (auto v = metric.get(*r)) vals.push_back(*v);
                    cell[{d, n}] = vals.empty() ? std::nullopt
                                                : std::optional<double>(median_of(vals));
                }

            auto emit_table = [&](const std::string& title, bool percent) {
                out += "\n" + title + "\n";
                out += pad_left("scheme", 12);
                for (int n : ns) out += pad("N=" + std::to_string(n), 14);
                out += '\n';
                for (const auto& d : disciplines) {
                    out += pad_left(d, 12);
                    for (int n : ns) {
                        const auto v = cell[{d, n}];
                        std::string text = "-";
                        if (percent) {
                            const auto red = cell[{"red", n}];
                            if (v && red) {
                                if (auto pc = metrics::percent_change(*v, *red)) {
                                    char buf[32];
                                    std::snprintf(buf, sizeof buf, "%+.2f",
                                                  metric.change_is_increase ? -*pc : *pc);
                                    text = buf;
                                }
                            }
                        } else if (v) {
                            text = format_g6(*v);
                        }
                        out += pad(text, 14);
                    }
                    out += '\n';
                }
            };

            emit_table(std::string(metric.title), false);
            if (metric.change_title) emit_table(std::string(metric.change_title), true);
        }
    }
    return out;
}

std::string trace_csv(const metrics::RunMetrics& m) {
    std::string out = "t,q,avg,davg,mid_th\n";
    for (const auto& s : m.trace) {
        out += format_g6(s.t);
        out += ',' + format_g6(s.q);
        out += ',';
        if (!std::isnan(s.avg)) out += format_g6(s.avg);
        out += ',';
        if (!std::isnan(s.davg)) out += format_g6(s.davg);
        out += ',';
        if (!std::isnan(s.mid_th)) out += format_g6(s.mid_th);
        out += '\n';
    }
    return out;
}

std::string trace_file_name(const Combo& combo) {
    return "trace_" + combo.discipline + "_n" + std::to_string(combo.n_sources) + "_mt" +
           format_g6(combo.max_th) + "_b" + std::to_string(combo.buffer) + "_s" +
           std::to_string(combo.seed) + ".csv";
}

} // namespace aqmsim::cli
