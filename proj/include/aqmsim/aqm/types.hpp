#ifndef AQMSIM_AQM_TYPES_HPP
#define AQMSIM_AQM_TYPES_HPP

namespace aqmsim::aqm {

// Behavior of the AQMRD dropping function for avg >= mid_th while the
// average is rising: either jump straight to certain drop, or fall back
// to the wide linear ramp until max_th.
enum class AboveMidMode {
    UnitProb,
    P2Fallback,
};

// Static gateway-side AQM configuration shared by all disciplines.
// Thresholds are in packets; probabilities and weights are dimensionless.
struct GatewayParams {
    double w_q = 0.002;             // EWMA weight, (0,1]
    double max_p = 0.1;             // top of the linear drop ramp, (0,1]
    double min_th = 16.0;           // lower average-queue threshold, packets
    double max_th = 48.0;           // upper average-queue threshold, packets
    int buffer_capacity = 64;       // physical queue limit, packets
    double x = 2.0;                 // mid_th initialization factor, [1,3]
    double sample_interval = 0.010; // EWMA sampling clock, seconds
    AboveMidMode above_mid_mode = AboveMidMode::UnitProb;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class Action { Enqueue, Drop };

// Why a drop verdict was issued. Early = probabilistic AQM drop,
// Forced = average at/above max_th, Overflow = physical buffer full.
enum class DropKind { None, Early, Forced, Overflow };

// Per-arrival decision together with the probability that produced it
// (0 for a forced enqueue, 1 for a forced drop).
struct Verdict {
    Action action = Action::Enqueue;
    double p_applied = 0.0;
    DropKind kind = DropKind::None;

    static Verdict enqueue(double p) { return {Action::Enqueue, p, DropKind::None}; }
    static Verdict drop(double p, DropKind k) { return {Action::Drop, p, k}; }

    bool dropped() const { return action == Action::Drop; }
};

} // namespace aqmsim::aqm

#endif
