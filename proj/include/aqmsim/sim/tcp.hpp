#ifndef AQMSIM_SIM_TCP_HPP
#define AQMSIM_SIM_TCP_HPP

#include "aqmsim/sim/time.hpp"

#include <cstdint>

namespace aqmsim::sim {

// Reno-style AIMD abstraction of one FTP source: slow start below
// ssthresh, linear growth above, one multiplicative decrease per window.
// Sequence numbers only count transmissions; dropped packets reuse the
// sequence space when the window reopens.
struct FlowState {
    double cwnd = 2.0;
    double ssthresh = 200.0;
    int in_flight = 0;
    std::int64_t next_seq = 0;
    std::int64_t highest_acked = -1;
    std::int64_t recovery_until_seq = -1;

    SimTime access_prop = 0; // one-way source<->router propagation
    SimTime access_free = 0; // when the access link can serialize the next packet
    SimTime start_time = 0;
};

// Per-ACK window growth: +1 in slow start, +1/cwnd in congestion
// avoidance, capped at cwnd_cap.
void tcp_on_ack(FlowState& flow, double cwnd_cap);

// Loss signal for lost_seq: at most one halving per window, guarded by
// recovery_until_seq; cwnd never falls below 2.
void tcp_on_loss(FlowState& flow, std::int64_t lost_seq);

} // namespace aqmsim::sim

#endif
