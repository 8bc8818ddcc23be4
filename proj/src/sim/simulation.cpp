#include "aqmsim/sim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aqmsim::sim {

void LinkParams::validate() const {
    auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
    if (!(bottleneck_bw_bps > 0.0)) fail("bottleneck bandwidth must be positive");
    if (!(bottleneck_prop_s > 0.0)) fail("bottleneck propagation delay must be positive");
    if (!(access_bw_bps > 0.0)) fail("access bandwidth must be positive");
    if (!(access_prop_min_s > 0.0 && access_prop_min_s <= access_prop_max_s))
        fail("access propagation delay range is invalid");
}

Simulation::Simulation(const SimConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg_.n_sources < 1) throw std::invalid_argument("n_sources must be at least 1");
    cfg_.gw.validate();
    cfg_.link.validate();
    if (cfg_.packet_size_bytes < 1) throw std::invalid_argument("packet size must be positive");
    if (!(cfg_.cwnd_cap >= 1.0)) throw std::invalid_argument("cwnd_cap must be at least 1");

    const double pkt_bits = 8.0 * cfg_.packet_size_bytes;
    btl_tx_ = to_simtime(pkt_bits / cfg_.link.bottleneck_bw_bps);
    access_tx_ = to_simtime(pkt_bits / cfg_.link.access_bw_bps);
    btl_prop_ = to_simtime(cfg_.link.bottleneck_prop_s);
    tick_interval_ = to_simtime(cfg_.gw.sample_interval);

    flows_.resize(cfg_.n_sources);
    for (auto& f : flows_) {
        f.ssthresh = cfg_.cwnd_cap;
        f.access_prop =
            to_simtime(rng_.uniform(cfg_.link.access_prop_min_s, cfg_.link.access_prop_max_s));
    }
    for (auto& f : flows_)
        f.start_time = to_simtime(rng_.uniform(0.0, cfg_.start_jitter_max_s));

    auto tuning = cfg_.tuning;
    tuning.sfq.salt = rng_.next_u64();
    if (tuning.rem.capacity_pps <= 0.0)
        tuning.rem.capacity_pps = cfg_.link.bottleneck_bw_bps / pkt_bits;
    disc_ = aqm::make_discipline(cfg_.discipline, cfg_.gw, tuning);

    buckets_.resize(disc_->bucket_count());
    occupancy_.resize(disc_->bucket_count());
    timer_interval_ = to_simtime(disc_->timer_interval_s());
}

void Simulation::schedule(SimTime t, EventKind kind, std::int32_t flow, std::int64_t seq,
                          SimTime birth) {
    events_.push(Event{t, next_order_++, kind, flow, seq, birth});
}

void Simulation::try_send(std::int32_t fi) {
    auto& f = flows_[fi];
    while (static_cast<double>(f.in_flight) < f.cwnd) {
        const std::int64_t seq = f.next_seq++;
        ++f.in_flight;
        ++m_.sent;
        const SimTime depart = std::max(now_, f.access_free);
        f.access_free = depart + access_tx_;
        schedule(f.access_free + f.access_prop, EventKind::PacketArrival, fi, seq, depart);
    }
}

void Simulation::start_transmission() {
    for (std::size_t b = 0; b < buckets_.size(); ++b)
        occupancy_[b] = static_cast<int>(buckets_[b].size());
    const int b = disc_->next_bucket(occupancy_);
    in_service_ = buckets_[b].front();
    buckets_[b].pop_front();
    --queue_len_;
    schedule(now_ + btl_tx_, EventKind::DequeueComplete);
}

void Simulation::handle_packet_arrival(const Event& ev) {
    ++m_.arrivals;
    if (!in_service_ && queue_len_ == 0 && now_ > idle_since_)
        disc_->on_idle_end(to_seconds(now_ - idle_since_), to_seconds(btl_tx_));

    const int b = disc_->select_bucket(static_cast<std::uint64_t>(ev.flow));
    const aqm::Arrival arrival{queue_len_, static_cast<int>(buckets_[b].size()), to_seconds(now_),
                               rng_.uniform01(), static_cast<std::uint64_t>(ev.flow)};
    const aqm::Verdict v = disc_->on_arrival(arrival);

    if (v.dropped()) {
        ++m_.drops;
        switch (v.kind) {
        case aqm::DropKind::Early: ++m_.drops_early; break;
        case aqm::DropKind::Forced: ++m_.drops_forced; break;
        default: ++m_.drops_overflow; break;
        }
        const auto& f = flows_[ev.flow];
        schedule(now_ + 2 * (f.access_prop + btl_prop_), EventKind::LossNotify, ev.flow, ev.seq);
        return;
    }

    buckets_[b].push_back(QueuedPacket{ev.flow, ev.seq, ev.birth, now_});
    ++queue_len_;
    if (queue_len_ > cfg_.gw.buffer_capacity)
        throw std::logic_error("queue bound violated: occupancy above buffer capacity");
    if (!in_service_) start_transmission();
}

void Simulation::handle_dequeue_complete() {
    const QueuedPacket p = *in_service_;
    in_service_.reset();

    ++m_.delivered;
    m_.delivered_bytes += cfg_.packet_size_bytes;
    busy_ns_ += btl_tx_;
    qdelay_sum_ns_ += now_ - p.enqueue_time;
    ++m_.qdelay_count;

    schedule(now_ + 2 * btl_prop_ + flows_[p.flow].access_prop, EventKind::AckArrival, p.flow,
             p.seq);

    if (queue_len_ > 0)
        start_transmission();
    else
        idle_since_ = now_;
}

void Simulation::handle_sample_tick() {
    disc_->on_sample_tick(queue_len_, to_seconds(now_));
    const auto ts = disc_->trace();

    m_.q_sum += queue_len_;
    ++m_.q_samples;
    m_.q_max = std::max(m_.q_max, static_cast<double>(queue_len_));
    if (!std::isnan(ts.avg)) {
        m_.avg_sum += ts.avg;
        ++m_.avg_samples;
        m_.avg_max = std::max(m_.avg_max, ts.avg);
    }
    if (!std::isnan(ts.mid_th)) {
        if (!m_.has_mid_th) {
            m_.mid_th_min = m_.mid_th_max = ts.mid_th;
            m_.has_mid_th = true;
        } else {
            m_.mid_th_min = std::min(m_.mid_th_min, ts.mid_th);
            m_.mid_th_max = std::max(m_.mid_th_max, ts.mid_th);
        }
    }
    if (cfg_.record_trace)
        m_.trace.push_back(
            {to_seconds(now_), static_cast<double>(queue_len_), ts.avg, ts.davg, ts.mid_th});

    ++tick_index_;
    if (tick_index_ < n_ticks_) schedule(tick_index_ * tick_interval_, EventKind::SampleTick);
}

metrics::RunMetrics Simulation::run(double duration_s) {
    if (ran_) throw std::logic_error("Simulation::run() may only be called once");
    ran_ = true;
    if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
    duration_ = to_simtime(duration_s);
    if (duration_ < 1) duration_ = 1;
    m_.duration_s = duration_s;

    n_ticks_ = duration_ / tick_interval_ + 1;
    schedule(0, EventKind::SampleTick);
    if (timer_interval_ > 0) schedule(timer_interval_, EventKind::DisciplineTimer);
    for (std::int32_t i = 0; i < cfg_.n_sources; ++i)
        schedule(flows_[i].start_time, EventKind::FlowStart, i);

    while (!events_.empty() && events_.top().time <= duration_) {
        const Event ev = events_.top();
        events_.pop();
        now_ = ev.time;
        switch (ev.kind) {
        case EventKind::FlowStart:
            try_send(ev.flow);
            break;
        case EventKind::PacketArrival:
            handle_packet_arrival(ev);
            break;
        case EventKind::DequeueComplete:
            handle_dequeue_complete();
            break;
        case EventKind::AckArrival: {
            auto& f = flows_[ev.flow];
            --f.in_flight;
            f.highest_acked = std::max(f.highest_acked, ev.seq);
            tcp_on_ack(f, cfg_.cwnd_cap);
            try_send(ev.flow);
            break;
        }
        case EventKind::LossNotify: {
            auto& f = flows_[ev.flow];
            --f.in_flight;
            tcp_on_loss(f, ev.seq);
            try_send(ev.flow);
            break;
        }
        case EventKind::SampleTick:
            handle_sample_tick();
            break;
        case EventKind::DisciplineTimer:
            disc_->on_timer(queue_len_, to_seconds(now_));
            schedule(now_ + timer_interval_, EventKind::DisciplineTimer);
            break;
        }
    }

    finalize();
    return m_;
}

void Simulation::finalize() {
    std::int64_t pending_arrivals = 0;
    while (!events_.empty()) {
        if (events_.top().kind == EventKind::PacketArrival) ++pending_arrivals;
        events_.pop();
    }
    m_.inventory_end = pending_arrivals + queue_len_ + (in_service_ ? 1 : 0);
    if (m_.sent != m_.delivered + m_.drops + m_.inventory_end)
        throw std::logic_error("packet conservation violated: sent != delivered + dropped + in flight");

    m_.qdelay_sum_s = to_seconds(qdelay_sum_ns_);
    m_.busy_s = to_seconds(busy_ns_);
}

} // namespace aqmsim::sim
