#pragma once

#include <cstdint>

namespace fusionsim {

// Deterministic splitmix64 stream. All randomness in the library flows through
// explicit Rng values so trials can be replayed and split by index without
// platform-dependent std:: distribution behavior.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // Independent stream derived from (seed, stream); used for per-trial splitting.
    static Rng split(uint64_t seed, uint64_t stream) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        mix.next();
        mix.next();
        return mix;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin(double p_true) { return uniform() < p_true; }

    bool fair_coin() { return (next() & 1ULL) != 0; }

    // Uniform integer in [0, n). n must be > 0.
    uint32_t below(uint32_t n) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

  private:
    uint64_t state_;
};

}  // namespace fusionsim
