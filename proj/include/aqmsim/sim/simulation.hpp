#ifndef AQMSIM_SIM_SIMULATION_HPP
#define AQMSIM_SIM_SIMULATION_HPP

#include "aqmsim/aqm/discipline.hpp"
#include "aqmsim/metrics/metrics.hpp"
#include "aqmsim/sim/rng.hpp"
#include "aqmsim/sim/tcp.hpp"
#include "aqmsim/sim/time.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace aqmsim::sim {

struct LinkParams {
    double bottleneck_bw_bps = 20e6;
    double bottleneck_prop_s = 0.033; // one-way router->sink propagation
    double access_bw_bps = 100e6;
    double access_prop_min_s = 0.004;
    double access_prop_max_s = 0.010;

    void validate() const;
};

struct SimConfig {
    std::string discipline = "red";
    int n_sources = 25;
    std::uint64_t seed = 1;
    double duration_s = 100.0;
    aqm::GatewayParams gw{};
    LinkParams link{};
    aqm::DisciplineTuning tuning{};
    int packet_size_bytes = 1000;
    double cwnd_cap = 200.0;
    double start_jitter_max_s = 1.0;
    bool record_trace = false;
};

enum class EventKind : std::uint8_t {
    FlowStart,
    PacketArrival,
    DequeueComplete,
    AckArrival,
    LossNotify,
    SampleTick,
    DisciplineTimer,
};

// Events execute in (time, order) lexicographic order; order is the
// scheduling sequence number, which makes the execution order total and
// replays exact.
struct Event {
    SimTime time = 0;
    std::uint64_t order = 0;
    EventKind kind = EventKind::FlowStart;
    std::int32_t flow = -1;
    std::int64_t seq = -1;
    SimTime birth = 0;
};

struct QueuedPacket {
    std::int32_t flow;
    std::int64_t seq;
    SimTime birth;
    SimTime enqueue_time;
};

// Dumbbell: n_sources AIMD senders on individual access links feed one
// bottleneck queue managed by the chosen discipline; the sink acks every
// delivered packet. Strictly single-threaded; run() may be called once.
class Simulation {
  public:
    // Builds the topology; access propagation delays and start jitters are
    // drawn from the seeded generator, so equal seeds give equal setups.
    explicit Simulation(const SimConfig& cfg);

    // Processes events up to and including duration_s and returns the
    // finalized metrics. Throws std::logic_error if packet conservation or
    // the queue bound is violated.
    metrics::RunMetrics run(double duration_s);
    metrics::RunMetrics run() { return run(cfg_.duration_s); }

    const std::vector<FlowState>& flows() const { return flows_; }
    SimTime bottleneck_tx_time() const { return btl_tx_; }
    SimTime access_tx_time() const { return access_tx_; }

  private:
    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.order > b.order;
        }
    };

    void schedule(SimTime t, EventKind kind, std::int32_t flow = -1, std::int64_t seq = -1,
                  SimTime birth = 0);
    void try_send(std::int32_t flow_idx);
    void start_transmission();
    void handle_packet_arrival(const Event& ev);
    void handle_dequeue_complete();
    void handle_sample_tick();
    void finalize();

    SimConfig cfg_;
    Rng rng_;
    std::vector<FlowState> flows_;
    std::unique_ptr<aqm::Discipline> disc_;

    std::vector<std::deque<QueuedPacket>> buckets_;
    std::vector<int> occupancy_; // scratch for next_bucket
    int queue_len_ = 0;
    std::optional<QueuedPacket> in_service_;
    SimTime idle_since_ = 0;

    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    std::uint64_t next_order_ = 0;

    SimTime btl_tx_ = 0;
    SimTime access_tx_ = 0;
    SimTime btl_prop_ = 0;
    SimTime tick_interval_ = 0;
    SimTime timer_interval_ = 0;
    std::int64_t tick_index_ = 0;
    std::int64_t n_ticks_ = 0;

    SimTime now_ = 0;
    SimTime duration_ = 0;
    SimTime busy_ns_ = 0;
    SimTime qdelay_sum_ns_ = 0;
    bool ran_ = false;

    metrics::RunMetrics m_;
};

} // namespace aqmsim::sim

#endif
