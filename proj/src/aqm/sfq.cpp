#include "aqmsim/aqm/sfq.hpp"

namespace aqmsim::aqm {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

int sfq_bucket_of(std::uint64_t flow_id, std::uint64_t salt, int n_buckets) {
    return static_cast<int>(mix64(flow_id ^ salt) % static_cast<std::uint64_t>(n_buckets));
}

Verdict sfq_on_arrival(int bucket_len, int bucket_capacity) {
    if (bucket_len >= bucket_capacity) return Verdict::drop(1.0, DropKind::Overflow);
    return Verdict::enqueue(0.0);
}

int sfq_next_bucket(SfqState& state, std::span<const int> occupancy) {
    const int n = static_cast<int>(occupancy.size());
    for (int step = 1; step <= n; ++step) {
        const int b = (state.cursor + step) % n;
        if (occupancy[b] > 0) {
            state.cursor = b;
            return b;
        }
    }
    return -1;
}

void sfq_perturb(SfqState& state) {
    state.salt = mix64(state.salt);
}

} // namespace aqmsim::aqm
