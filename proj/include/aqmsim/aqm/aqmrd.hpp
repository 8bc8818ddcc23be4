#ifndef AQMSIM_AQM_AQMRD_HPP
#define AQMSIM_AQM_AQMRD_HPP

#include "aqmsim/aqm/types.hpp"

namespace aqmsim::aqm {

// Mutable AQMRD gateway state. avg tracks the EWMA of the sampled queue
// size, davg the EWMA of its per-sample increments; mid_th adapts inside
// [min_th, max_th]; count is the number of in-band arrivals since the
// last probabilistic drop (-1 = fresh, no accumulation).
struct AqmrdState {
    double avg = 0.0;
    double davg = 0.0;
    double q_prev = 0.0;
    double mid_th = 0.0;
    int count = -1;
};

// mid_th starting value: min(x * min_th, max_th). Rejects x outside [1,3].
double init_mid_th(const GatewayParams& params);

AqmrdState make_aqmrd_state(const GatewayParams& params);

// One sample-clock step:
//   avg'  = (1-w_q)*avg  + w_q*q
//   davg' = (1-w_q)*davg + w_q*(q - q_prev)
void update_ewma(AqmrdState& state, double q, const GatewayParams& params);

// Steps mid_th one packet against the sign of davg, clamped to
// [min_th, max_th]. Called once per in-band arrival.
void adapt_mid_th(AqmrdState& state, const GatewayParams& params);

// Base dropping probability p_b for the current (avg, davg, mid_th).
// Rising average uses the steep ramp over [min_th, mid_th); falling or
// flat average uses the wide ramp over [min_th, max_th). Clamped to [0,1].
double base_drop_prob(const AqmrdState& state, const GatewayParams& params);

// Count-corrected probability p_a = p_b / (1 - count*p_b), saturating at 1
// when the denominator is non-positive. Negative counts act as zero.
double effective_drop_prob(double p_b, int count);

// Full per-arrival decision procedure. q is the physical occupancy seen by
// the arriving packet and u a uniform [0,1) draw from the caller's seeded
// generator. An ENQUEUE verdict is converted to an overflow DROP when
// q >= buffer_capacity.
Verdict aqmrd_on_arrival(AqmrdState& state, int q, double u, const GatewayParams& params);

// Empty-queue correction applied when the queue turns busy again after
// idling: avg * (1-w_q)^m with m = floor(idle / mean_tx). The EWMA clock
// does not run packet-sized steps while nothing arrives, so the average
// is aged by the number of packets that could have been transmitted.
double idle_decayed_avg(double avg, double w_q, double idle_seconds, double mean_tx_seconds);

} // namespace aqmsim::aqm

#endif
