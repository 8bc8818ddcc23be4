#include "aqmsim/sim/tcp.hpp"

#include <algorithm>

namespace aqmsim::sim {

void tcp_on_ack(FlowState& flow, double cwnd_cap) {
    if (flow.cwnd < flow.ssthresh)
        flow.cwnd += 1.0;
    else
        flow.cwnd += 1.0 / flow.cwnd;
    flow.cwnd = std::min(flow.cwnd, cwnd_cap);
}

void tcp_on_loss(FlowState& flow, std::int64_t lost_seq) {
    if (lost_seq > flow.recovery_until_seq) {
        flow.ssthresh = std::max(flow.cwnd / 2.0, 2.0);
        flow.cwnd = flow.ssthresh;
        flow.recovery_until_seq = flow.next_seq;
    }
}

} // namespace aqmsim::sim
