#ifndef AQMSIM_SIM_TIME_HPP
#define AQMSIM_SIM_TIME_HPP

#include <cmath>
#include <cstdint>

namespace aqmsim::sim {

// Simulated time in integer nanoseconds. All event arithmetic stays in
// integers so replays are exact and event ordering never depends on
// floating-point rounding.
using SimTime = std::int64_t;

inline SimTime to_simtime(double seconds) {
    return static_cast<SimTime>(std::llround(seconds * 1e9));
}

inline double to_seconds(SimTime t) {
    return static_cast<double>(t) * 1e-9;
}

} // namespace aqmsim::sim

#endif
