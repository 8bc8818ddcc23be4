#include "aqmsim/aqm/tred.hpp"

#include "aqmsim/aqm/aqmrd.hpp"

#include <algorithm>

namespace aqmsim::aqm {

double tred_drop_prob(double avg, double max_p, const GatewayParams& params) {
    if (avg < params.min_th) return 0.0;
    if (avg >= params.max_th) return 1.0;
    const double t = (avg - params.min_th) / (params.max_th - params.min_th);
    double f;
    if (t < 1.0 / 3.0)
        f = 2.25 * t * t;
    else if (t < 2.0 / 3.0)
        f = 1.5 * t - 0.25;
    else
        f = 1.0 - 2.25 * (1.0 - t) * (1.0 - t);
    return std::clamp(max_p * f, 0.0, 1.0);
}

Verdict tred_on_arrival(RedState& state, int q, double u, const GatewayParams& params) {
    Verdict v;
    if (state.avg < params.min_th) {
        state.count = 0;
        v = Verdict::enqueue(0.0);
    } else if (state.avg < params.max_th) {
        const double p_b = tred_drop_prob(state.avg, state.cur_max_p, params);
        const double p_a = effective_drop_prob(p_b, state.count);
        if (u < p_a) {
            state.count = 0;
            v = Verdict::drop(p_a, DropKind::Early);
        } else {
            ++state.count;
            v = Verdict::enqueue(p_a);
        }
    } else {
        state.count = 0;
        v = Verdict::drop(1.0, DropKind::Forced);
    }
    if (v.action == Action::Enqueue && q >= params.buffer_capacity)
        return Verdict::drop(1.0, DropKind::Overflow);
    return v;
}

} // namespace aqmsim::aqm
