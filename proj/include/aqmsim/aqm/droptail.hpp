#ifndef AQMSIM_AQM_DROPTAIL_HPP
#define AQMSIM_AQM_DROPTAIL_HPP

#include "aqmsim/aqm/types.hpp"

namespace aqmsim::aqm {

// No early dropping: reject only on physical overflow.
inline Verdict droptail_on_arrival(int q, int buffer_capacity) {
    if (q >= buffer_capacity) return Verdict::drop(1.0, DropKind::Overflow);
    return Verdict::enqueue(0.0);
}

} // namespace aqmsim::aqm

#endif
