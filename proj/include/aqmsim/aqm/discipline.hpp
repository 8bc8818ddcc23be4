#ifndef AQMSIM_AQM_DISCIPLINE_HPP
#define AQMSIM_AQM_DISCIPLINE_HPP

#include "aqmsim/aqm/ared.hpp"
#include "aqmsim/aqm/pi.hpp"
#include "aqmsim/aqm/rem.hpp"
#include "aqmsim/aqm/sfq.hpp"
#include "aqmsim/aqm/types.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aqmsim::aqm {

struct Arrival {
    int queue_len = 0;  // total physical occupancy, packets
    int bucket_len = 0; // occupancy of the packet's bucket (== queue_len single-queue)
    double now = 0.0;   // seconds
    double u = 0.0;     // uniform [0,1) draw
    std::uint64_t flow_id = 0;
};

// Values sampled into the run trace; NaN where a discipline has no such
// quantity.
struct TraceState {
    double avg;
    double davg;
    double mid_th;
    TraceState();
};

struct DisciplineTuning {
    AredTuning ared{};
    RemTuning rem{};
    PiTuning pi{};
    SfqTuning sfq{};
};

// A queue discipline is a deterministic state machine driven entirely by
// the caller: arrivals carry the uniform draw, the EWMA sample clock and
// any periodic control update arrive as explicit calls. Instances never
// schedule anything themselves and hold no reference to the engine.
class Discipline {
  public:
    virtual ~Discipline() = default;

    virtual Verdict on_arrival(const Arrival& a) = 0;

    // Fired every GatewayParams::sample_interval seconds.
    virtual void on_sample_tick(int queue_len, double now) { (void)queue_len, (void)now; }

    // The queue turned busy after idling; mean_tx is one packet service time.
    virtual void on_idle_end(double idle_s, double mean_tx_s) { (void)idle_s, (void)mean_tx_s; }

    // Periodic control update; 0 = none.
    virtual double timer_interval_s() const { return 0.0; }
    virtual void on_timer(int queue_len, double now) { (void)queue_len, (void)now; }

    virtual int bucket_count() const { return 1; }
    virtual int select_bucket(std::uint64_t flow_id) const { (void)flow_id; return 0; }
    virtual int next_bucket(std::span<const int> occupancy) { (void)occupancy; return 0; }

    virtual TraceState trace() const { return {}; }
};

const std::vector<std::string>& discipline_names();

// Throws std::invalid_argument for unknown names. Accepted names:
// aqmrd, red, ared (adaptive-red), tred, rem, pi, sfq, droptail (drop-tail).
std::unique_ptr<Discipline> make_discipline(std::string_view name, const GatewayParams& params,
                                            const DisciplineTuning& tuning);

} // namespace aqmsim::aqm

#endif
