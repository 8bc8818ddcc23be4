#ifndef AQMSIM_AQM_PI_HPP
#define AQMSIM_AQM_PI_HPP

#include "aqmsim/aqm/types.hpp"

namespace aqmsim::aqm {

// Proportional-integral controller on the instantaneous queue, sampled at
// a fixed frequency, decoupling the drop probability from the averaged
// queue size.
struct PiTuning {
    double a = 1.822e-5;
    double b = 1.816e-5;
    double hz = 160.0;
    double q_ref = 20.0;
};

struct PiState {
    double p = 0.0;
    double q_prev = 0.0;
};

Verdict pi_on_arrival(const PiState& state, int q, double u, const GatewayParams& params);

// p <- clamp(p + a*(q - q_ref) - b*(q_prev - q_ref), 0, 1)
void pi_update(PiState& state, int q, const PiTuning& tuning);

} // namespace aqmsim::aqm

#endif
