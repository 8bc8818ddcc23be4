#include "aqmsim/aqm/rem.hpp"

#include <algorithm>
#include <cmath>

namespace aqmsim::aqm {

double rem_drop_prob(const RemState& state, const RemTuning& tuning) {
    return std::clamp(1.0 - std::pow(tuning.phi, -state.price), 0.0, 1.0);
}

Verdict rem_on_arrival(RemState& state, int q, double u, const GatewayParams& params,
                       const RemTuning& tuning) {
    ++state.arrivals_in_interval;
    if (q >= params.buffer_capacity) return Verdict::drop(1.0, DropKind::Overflow);
    const double p = rem_drop_prob(state, tuning);
    if (u < p) return Verdict::drop(p, DropKind::Early);
    return Verdict::enqueue(p);
}

void rem_update_price(RemState& state, int q, const RemTuning& tuning) {
    const double capacity = tuning.capacity_pps * tuning.interval_s;
    const double input = static_cast<double>(state.arrivals_in_interval);
    const double mismatch = tuning.alpha * (q - tuning.q_ref) + input - capacity;
    state.price = std::max(0.0, state.price + tuning.gamma * mismatch);
    state.arrivals_in_interval = 0;
}

} // namespace aqmsim::aqm
