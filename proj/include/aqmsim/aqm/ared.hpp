#ifndef AQMSIM_AQM_ARED_HPP
#define AQMSIM_AQM_ARED_HPP

#include "aqmsim/aqm/red.hpp"

namespace aqmsim::aqm {

// AIMD adaptation of max_p, run on a fixed timer: additive increase while
// avg sits above the target band, multiplicative decrease below it.
struct AredTuning {
    double interval_s = 0.5;
    double min_max_p = 0.01;
    double max_max_p = 0.5;
    double increment = 0.01; // per step, capped at cur_max_p/4
    double decrease = 0.9;
};

// Target band is [min_th + 0.4*(max_th-min_th), min_th + 0.6*(max_th-min_th)].
void ared_adapt(RedState& state, const GatewayParams& params, const AredTuning& tuning);

} // namespace aqmsim::aqm

#endif
