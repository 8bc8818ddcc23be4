#ifndef AQMSIM_AQM_TRED_HPP
#define AQMSIM_AQM_TRED_HPP

#include "aqmsim/aqm/red.hpp"

namespace aqmsim::aqm {

// Three-section drop curve over [min_th, max_th): quadratic in the lower
// and upper thirds, linear in the middle, C1 at the joints. Scaled by
// max_p; gentler than the linear ramp at low averages and steeper near
// max_th.
double tred_drop_prob(double avg, double max_p, const GatewayParams& params);

Verdict tred_on_arrival(RedState& state, int q, double u, const GatewayParams& params);

} // namespace aqmsim::aqm

#endif
