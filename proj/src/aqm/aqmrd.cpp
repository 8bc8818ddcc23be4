#include "aqmsim/aqm/aqmrd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aqmsim::aqm {

void GatewayParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(w_q > 0.0 && w_q <= 1.0)) fail("w_q must lie in (0,1]");
    if (!(max_p > 0.0 && max_p <= 1.0)) fail("max_p must lie in (0,1]");
    if (!(min_th > 0.0)) fail("min_th must be positive");
    if (!(min_th < max_th)) fail("min_th must be smaller than max_th");
    if (buffer_capacity < 1) fail("buffer_capacity must be at least 1 packet");
    if (!(x >= 1.0 && x <= 3.0)) fail("x must lie in [1,3]");
    if (!(sample_interval > 0.0)) fail("sample_interval must be positive");
}

double init_mid_th(const GatewayParams& params) {
    if (!(params.x >= 1.0 && params.x <= 3.0))
        throw std::invalid_argument("x must lie in [1,3]");
    return std::min(params.x * params.min_th, params.max_th);
}

AqmrdState make_aqmrd_state(const GatewayParams& params) {
    AqmrdState st;
    st.mid_th = init_mid_th(params);
    return st;
}

void update_ewma(AqmrdState& state, double q, const GatewayParams& params) {
    state.avg = (1.0 - params.w_q) * state.avg + params.w_q * q;
    state.davg = (1.0 - params.w_q) * state.davg + params.w_q * (q - state.q_prev);
    state.q_prev = q;
}

void adapt_mid_th(AqmrdState& state, const GatewayParams& params) {
    if (state.davg < 0.0)
        state.mid_th += 1.0;
    else if (state.davg > 0.0)
        state.mid_th -= 1.0;
    state.mid_th = std::clamp(state.mid_th, params.min_th, params.max_th);
}

namespace {

double wide_ramp(double avg, const GatewayParams& p) {
    return p.max_p * (avg - p.min_th) / (p.max_th - p.min_th);
}

} // namespace

double base_drop_prob(const AqmrdState& state, const GatewayParams& params) {
    const double avg = state.avg;
    double p = 0.0;
    if (state.davg > 0.0) {
        if (avg < params.min_th) {
            p = 0.0;
        } else if (avg < state.mid_th) {
            const double den = state.mid_th - params.min_th;
            // den = 0 only when mid_th sits on min_th; the band is then
            // empty, but guard the division and use the limit value.
            p = den > 0.0 ? params.max_p * (avg - params.min_th) / den : params.max_p;
        } else if (params.above_mid_mode == AboveMidMode::UnitProb) {
            p = 1.0;
        } else {
            p = avg < params.max_th ? wide_ramp(avg, params) : 1.0;
        }
    } else {
        if (avg < params.min_th)
            p = 0.0;
        else if (avg < params.max_th)
            p = wide_ramp(avg, params);
        else
            p = 1.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

double effective_drop_prob(double p_b, int count) {
    const double c = static_cast<double>(std::max(count, 0));
    if (c * p_b >= 1.0) return 1.0;
    return std::clamp(p_b / (1.0 - c * p_b), 0.0, 1.0);
}

Verdict aqmrd_on_arrival(AqmrdState& state, int q, double u, const GatewayParams& params) {
    Verdict v;
    if (state.avg < params.min_th) {
        state.count = -1;
        v = Verdict::enqueue(0.0);
    } else if (state.avg < params.max_th) {
        ++state.count;
        adapt_mid_th(state, params);
        const double p_b = base_drop_prob(state, params);
        const double p_a = effective_drop_prob(p_b, state.count);
        if (u < p_a) {
            state.count = 0;
            v = Verdict::drop(p_a, DropKind::Early);
        } else {
            v = Verdict::enqueue(p_a);
        }
    } else {
        state.count = -1;
        v = Verdict::drop(1.0, DropKind::Forced);
    }
    if (v.action == Action::Enqueue && q >= params.buffer_capacity)
        return Verdict::drop(1.0, DropKind::Overflow);
    return v;
}

double idle_decayed_avg(double avg, double w_q, double idle_seconds, double mean_tx_seconds) {
    if (idle_seconds <= 0.0 || mean_tx_seconds <= 0.0) return avg;
    const double m = std::floor(idle_seconds / mean_tx_seconds);
    return avg * std::pow(1.0 - w_q, m);
}

} // namespace aqmsim::aqm
