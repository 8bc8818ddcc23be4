#include "aqmsim/aqm/pi.hpp"

#include <algorithm>

namespace aqmsim::aqm {

Verdict pi_on_arrival(const PiState& state, int q, double u, const GatewayParams& params) {
    if (q >= params.buffer_capacity) return Verdict::drop(1.0, DropKind::Overflow);
    if (u < state.p) return Verdict::drop(state.p, DropKind::Early);
    return Verdict::enqueue(state.p);
}

void pi_update(PiState& state, int q, const PiTuning& tuning) {
    const double next =
        state.p + tuning.a * (q - tuning.q_ref) - tuning.b * (state.q_prev - tuning.q_ref);
    state.p = std::clamp(next, 0.0, 1.0);
    state.q_prev = static_cast<double>(q);
}

} // namespace aqmsim::aqm
