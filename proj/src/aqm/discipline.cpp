#include "aqmsim/aqm/discipline.hpp"

#include "aqmsim/aqm/aqmrd.hpp"
#include "aqmsim/aqm/droptail.hpp"
#include "aqmsim/aqm/red.hpp"
#include "aqmsim/aqm/tred.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace aqmsim::aqm {

TraceState::TraceState()
    : avg(std::numeric_limits<double>::quiet_NaN()),
      davg(std::numeric_limits<double>::quiet_NaN()),
      mid_th(std::numeric_limits<double>::quiet_NaN()) {}

namespace {

class AqmrdDiscipline final : public Discipline {
  public:
    explicit AqmrdDiscipline(const GatewayParams& p) : p_(p), st_(make_aqmrd_state(p)) {}

    Verdict on_arrival(const Arrival& a) override {
        return aqmrd_on_arrival(st_, a.queue_len, a.u, p_);
    }
    void on_sample_tick(int q, double) override { update_ewma(st_, q, p_); }
    void on_idle_end(double idle_s, double mean_tx_s) override {
        st_.avg = idle_decayed_avg(st_.avg, p_.w_q, idle_s, mean_tx_s);
    }
    TraceState trace() const override {
        TraceState t;
        t.avg = st_.avg;
        t.davg = st_.davg;
        t.mid_th = st_.mid_th;
        return t;
    }

  private:
    GatewayParams p_;
    AqmrdState st_;
};

// RED and TRED differ only in the ramp shape.
class RedDiscipline : public Discipline {
  public:
    explicit RedDiscipline(const GatewayParams& p) : p_(p), st_(make_red_state(p)) {}

    Verdict on_arrival(const Arrival& a) override {
        return red_on_arrival(st_, a.queue_len, a.u, p_);
    }
    void on_sample_tick(int q, double) override {
        st_.avg = (1.0 - p_.w_q) * st_.avg + p_.w_q * q;
    }
    void on_idle_end(double idle_s, double mean_tx_s) override {
        st_.avg = idle_decayed_avg(st_.avg, p_.w_q, idle_s, mean_tx_s);
    }
    TraceState trace() const override {
        TraceState t;
        t.avg = st_.avg;
        return t;
    }

  protected:
    GatewayParams p_;
    RedState st_;
};

class TredDiscipline final : public RedDiscipline {
  public:
    using RedDiscipline::RedDiscipline;
    Verdict on_arrival(const Arrival& a) override {
        return tred_on_arrival(st_, a.queue_len, a.u, p_);
    }
};

class AredDiscipline final : public RedDiscipline {
  public:
    AredDiscipline(const GatewayParams& p, const AredTuning& t) : RedDiscipline(p), t_(t) {}
    double timer_interval_s() const override { return t_.interval_s; }
    void on_timer(int, double) override { ared_adapt(st_, p_, t_); }

  private:
    AredTuning t_;
};

class RemDiscipline final : public Discipline {
  public:
    RemDiscipline(const GatewayParams& p, const RemTuning& t) : p_(p), t_(t) {}
    Verdict on_arrival(const Arrival& a) override {
        return rem_on_arrival(st_, a.queue_len, a.u, p_, t_);
    }
    double timer_interval_s() const override { return t_.interval_s; }
    void on_timer(int q, double) override { rem_update_price(st_, q, t_); }

  private:
    GatewayParams p_;
    RemTuning t_;
    RemState st_;
};

class PiDiscipline final : public Discipline {
  public:
    PiDiscipline(const GatewayParams& p, const PiTuning& t) : p_(p), t_(t) {}
    Verdict on_arrival(const Arrival& a) override {
        return pi_on_arrival(st_, a.queue_len, a.u, p_);
    }
    double timer_interval_s() const override { return 1.0 / t_.hz; }
    void on_timer(int q, double) override { pi_update(st_, q, t_); }

  private:
    GatewayParams p_;
    PiTuning t_;
    PiState st_;
};

class SfqDiscipline final : public Discipline {
  public:
    SfqDiscipline(const GatewayParams& p, const SfqTuning& t) : t_(t) {
        st_.salt = t.salt;
        buffer_capacity_ = p.buffer_capacity;
        bucket_capacity_ = std::max(1, p.buffer_capacity / t_.buckets);
    }
    Verdict on_arrival(const Arrival& a) override {
        // Per-bucket share rounds up to one packet for tiny buffers, so the
        // physical limit still has to be checked on the total.
        if (a.queue_len >= buffer_capacity_) return Verdict::drop(1.0, DropKind::Overflow);
        return sfq_on_arrival(a.bucket_len, bucket_capacity_);
    }
    double timer_interval_s() const override { return t_.perturb_interval_s; }
    void on_timer(int, double) override { sfq_perturb(st_); }
    int bucket_count() const override { return t_.buckets; }
    int select_bucket(std::uint64_t flow_id) const override {
        return sfq_bucket_of(flow_id, st_.salt, t_.buckets);
    }
    int next_bucket(std::span<const int> occupancy) override {
        return sfq_next_bucket(st_, occupancy);
    }

  private:
    SfqTuning t_;
    SfqState st_;
    int buffer_capacity_;
    int bucket_capacity_;
};

class DropTailDiscipline final : public Discipline {
  public:
    explicit DropTailDiscipline(const GatewayParams& p) : capacity_(p.buffer_capacity) {}
    Verdict on_arrival(const Arrival& a) override {
        return droptail_on_arrival(a.queue_len, capacity_);
    }

  private:
    int capacity_;
};

} // namespace

const std::vector<std::string>& discipline_names() {
    static const std::vector<std::string> names = {"aqmrd", "red", "ared", "tred",
                                                   "rem",   "pi",  "sfq",  "droptail"};
    return names;
}

std::unique_ptr<Discipline> make_discipline(std::string_view name, const GatewayParams& params,
                                            const DisciplineTuning& tuning) {
    params.validate();
    if (name == "aqmrd") return std::make_unique<AqmrdDiscipline>(params);
    if (name == "red") return std::make_unique<RedDiscipline>(params);
    if (name == "ared" || name == "adaptive-red")
        return std::make_unique<AredDiscipline>(params, tuning.ared);
    if (name == "tred") return std::make_unique<TredDiscipline>(params);
    if (name == "rem") return std::make_unique<RemDiscipline>(params, tuning.rem);
    if (name == "pi") return std::make_unique<PiDiscipline>(params, tuning.pi);
    if (name == "sfq") return std::make_unique<SfqDiscipline>(params, tuning.sfq);
    if (name == "droptail" || name == "drop-tail")
        return std::make_unique<DropTailDiscipline>(params);
    throw std::invalid_argument("unknown discipline: " + std::string(name));
}

} // namespace aqmsim::aqm
