#pragma once

#include <cstdint>

#include "repnet/types.hpp"

namespace repnet {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based splittable generator: an independent draw stream per
/// (seed, step, agent, purpose) key, so one agent's draw count never
/// perturbs another's stream.
class StreamRng {
  public:
    StreamRng(std::uint64_t seed, std::uint64_t step, std::uint64_t agent, std::uint64_t purpose) {
        state_ = seed;
        absorb(step);
        absorb(agent);
        absorb(purpose);
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform double in [0,1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    void absorb(std::uint64_t key) {
        std::uint64_t x = state_ + key;
        state_ = splitmix64_next(x);
    }

    std::uint64_t state_;
};

/// Inverse-CDF draw from a discrete distribution. Rounding overshoot falls
/// back to the last index with positive mass.
inline int sample_index(StreamRng& rng, const Distribution& probs) {
    const double u = rng.next_unit();
    double acc = 0.0;
    int last_positive = -1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) last_positive = static_cast<int>(i);
        acc += probs[i];
        if (u < acc && probs[i] > 0.0) return static_cast<int>(i);
    }
    return last_positive >= 0 ? last_positive : static_cast<int>(probs.size()) - 1;
}

}  // namespace repnet
