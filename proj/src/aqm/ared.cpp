#include "aqmsim/aqm/ared.hpp"

#include <algorithm>

namespace aqmsim::aqm {

void ared_adapt(RedState& state, const GatewayParams& params, const AredTuning& tuning) {
    const double band = params.max_th - params.min_th;
    const double target_lo = params.min_th + 0.4 * band;
    const double target_hi = params.min_th + 0.6 * band;
    if (state.avg > target_hi && state.cur_max_p < tuning.max_max_p) {
        const double step = std::min(tuning.increment, state.cur_max_p / 4.0);
        state.cur_max_p = std::min(state.cur_max_p + step, tuning.max_max_p);
    } else if (state.avg < target_lo && state.cur_max_p > tuning.min_max_p) {
        state.cur_max_p = std::max(state.cur_max_p * tuning.decrease, tuning.min_max_p);
    }
}

} // namespace aqmsim::aqm
