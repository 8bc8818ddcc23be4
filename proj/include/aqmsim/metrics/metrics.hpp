#ifndef AQMSIM_METRICS_METRICS_HPP
#define AQMSIM_METRICS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aqmsim::metrics {

// One sample per EWMA tick; avg/davg/mid_th are NaN for disciplines that
// do not maintain them.
struct TraceSample {
    double t;
    double q;
    double avg;
    double davg;
    double mid_th;
};

// Counters and streaming accumulators for a single simulation run. The
// full tick trace is stored only when requested; the means needed for the
// reported measures are always accumulated single-pass.
struct RunMetrics {
    std::int64_t sent = 0;     // packets emitted by the sources
    std::int64_t arrivals = 0; // packets reaching the router
    std::int64_t drops = 0;
    std::int64_t drops_early = 0;
    std::int64_t drops_forced = 0;
    std::int64_t drops_overflow = 0;
    std::int64_t delivered = 0;
    std::int64_t delivered_bytes = 0;
    std::int64_t inventory_end = 0; // packets still in transit/queue/service at the horizon

    double duration_s = 0.0;

    double qdelay_sum_s = 0.0;
    std::int64_t qdelay_count = 0;

    double q_sum = 0.0; // tick-sampled instantaneous queue
    std::int64_t q_samples = 0;
    double q_max = 0.0;

    double avg_sum = 0.0; // tick-sampled EWMA average queue
    std::int64_t avg_samples = 0;
    double avg_max = 0.0;

    double mid_th_min = 0.0;
    double mid_th_max = 0.0;
    bool has_mid_th = false;

    double busy_s = 0.0; // bottleneck transmitter busy time

    std::vector<TraceSample> trace;
};

// Delivered bits over the run duration.
double throughput_bps(const RunMetrics& m);

// Link utilization: throughput / bandwidth.
double relative_throughput(const RunMetrics& m, double bandwidth_bps);

// Mean enqueue-to-end-of-transmission delay over delivered packets;
// absent when nothing was delivered.
std::optional<double> mean_queuing_delay_s(const RunMetrics& m);

// Arithmetic mean of uniformly spaced samples; absent for an empty trace.
std::optional<double> time_avg(std::span<const double> samples);

// Tick-sampled E[q] and E[avg]; E[avg] is absent for disciplines without
// an averaged queue estimate.
std::optional<double> e_queue_pkts(const RunMetrics& m);
std::optional<double> e_avg_pkts(const RunMetrics& m);

// 100 * drops / arrivals; absent when nothing arrived.
std::optional<double> loss_ratio_pct(const RunMetrics& m);

// 100 * (red - scheme) / red: positive = the scheme reduced the metric
// relative to RED. Absent when the RED value is zero. A loss-ratio
// "increase over RED" table is the negation.
std::optional<double> percent_change(double metric_scheme, double metric_red);

} // namespace aqmsim::metrics

#endif
