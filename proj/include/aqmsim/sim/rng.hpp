#ifndef AQMSIM_SIM_RNG_HPP
#define AQMSIM_SIM_RNG_HPP

#include <cstdint>
#include <random>

namespace aqmsim::sim {

// Seeded mt19937_64 with hand-rolled uniform conversions. The standard
// distributions are not bit-stable across library implementations; these
// conversions are, which keeps runs reproducible everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace aqmsim::sim

#endif
