#ifndef AQMSIM_AQM_SFQ_HPP
#define AQMSIM_AQM_SFQ_HPP

#include "aqmsim/aqm/types.hpp"

#include <cstdint>
#include <span>

namespace aqmsim::aqm {

// Stochastic fairness queueing: flows hash into a small set of buckets,
// each holding an equal share of the buffer, served round-robin. The hash
// salt is perturbed periodically so colliding flows separate over time.
struct SfqTuning {
    int buckets = 16;
    double perturb_interval_s = 5.0;
    std::uint64_t salt = 0;
};

struct SfqState {
    std::uint64_t salt = 0;
    int cursor = 0; // last bucket served
};

int sfq_bucket_of(std::uint64_t flow_id, std::uint64_t salt, int n_buckets);

// Per-bucket tail drop: the arriving packet is rejected iff its bucket
// already holds bucket_capacity packets.
Verdict sfq_on_arrival(int bucket_len, int bucket_capacity);

// Advances the round-robin cursor to the next non-empty bucket and
// returns it; -1 when all buckets are empty.
int sfq_next_bucket(SfqState& state, std::span<const int> occupancy);

void sfq_perturb(SfqState& state);

} // namespace aqmsim::aqm

#endif
