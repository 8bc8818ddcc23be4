#ifndef AQMSIM_AQM_RED_HPP
#define AQMSIM_AQM_RED_HPP

#include "aqmsim/aqm/types.hpp"

namespace aqmsim::aqm {

// State shared by the RED-style ramp disciplines (RED, Adaptive-RED, TRED).
// count is the number of packets admitted in the drop band since the last
// early drop; with that bookkeeping the count-corrected p_a makes the
// inter-drop gap uniform on {1..ceil(1/p_b)} under a constant p_b.
struct RedState {
    double avg = 0.0;
    int count = 0;
    double cur_max_p = 0.1; // equals max_p for plain RED; adapted by ARED
};

RedState make_red_state(const GatewayParams& params);

// Linear ramp: 0 below min_th, max_p*(avg-min_th)/(max_th-min_th) inside
// the band, 1 at and above max_th.
double red_drop_prob(double avg, double max_p, const GatewayParams& params);

Verdict red_on_arrival(RedState& state, int q, double u, const GatewayParams& params);

} // namespace aqmsim::aqm

#endif
