#ifndef AQMSIM_AQM_REM_HPP
#define AQMSIM_AQM_REM_HPP

#include "aqmsim/aqm/types.hpp"

#include <cstdint>

namespace aqmsim::aqm {

// Price-based marking: the link price integrates both queue mismatch
// (alpha * (q - q_ref)) and rate mismatch (input rate minus capacity),
// and the drop probability is 1 - phi^(-price).
struct RemTuning {
    double gamma = 0.001;
    double alpha = 0.1;
    double phi = 1.001;
    double q_ref = 20.0;
    double interval_s = 0.002;
    double capacity_pps = 0.0; // 0 = derive from the bottleneck link
};

struct RemState {
    double price = 0.0;
    std::int64_t arrivals_in_interval = 0;
};

double rem_drop_prob(const RemState& state, const RemTuning& tuning);

Verdict rem_on_arrival(RemState& state, int q, double u, const GatewayParams& params,
                       const RemTuning& tuning);

// Periodic price update: price <- max(0, price + gamma*(alpha*(q-q_ref) + x - c)),
// with x the arrivals counted since the previous update and c the link
// capacity over one interval, both in packets.
void rem_update_price(RemState& state, int q, const RemTuning& tuning);

} // namespace aqmsim::aqm

#endif
