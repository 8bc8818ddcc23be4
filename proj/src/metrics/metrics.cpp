#include "aqmsim/metrics/metrics.hpp"

namespace aqmsim::metrics {

double throughput_bps(const RunMetrics& m) {
    return static_cast<double>(m.delivered_bytes) * 8.0 / m.duration_s;
}

double relative_throughput(const RunMetrics& m, double bandwidth_bps) {
    return throughput_bps(m) / bandwidth_bps;
}

std::optional<double> mean_queuing_delay_s(const RunMetrics& m) {
    if (m.qdelay_count == 0) return std::nullopt;
    return m.qdelay_sum_s / static_cast<double>(m.qdelay_count);
}

std::optional<double> time_avg(std::span<const double> samples) {
    if (samples.empty()) return std::nullopt;
    double sum = 0.0;
    for (double s : samples) sum += s;
    return sum / static_cast<double>(samples.size());
}

std::optional<double> e_queue_pkts(const RunMetrics& m) {
    if (m.q_samples == 0) return std::nullopt;
    return m.q_sum / static_cast<double>(m.q_samples);
}

std::optional<double> e_avg_pkts(const RunMetrics& m) {
    if (m.avg_samples == 0) return std::nullopt;
    return m.avg_sum / static_cast<double>(m.avg_samples);
}

std::optional<double> loss_ratio_pct(const RunMetrics& m) {
    if (m.arrivals == 0) return std::nullopt;
    return 100.0 * static_cast<double>(m.drops) / static_cast<double>(m.arrivals);
}

std::optional<double> percent_change(double metric_scheme, double metric_red) {
    if (metric_red == 0.0) return std::nullopt;
    return 100.0 * (metric_red - metric_scheme) / metric_red;
}

} // namespace aqmsim::metrics
