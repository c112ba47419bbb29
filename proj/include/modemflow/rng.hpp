#pragma once

#include <cmath>
#include <cstdint>

// Deterministic 64-bit PRNG used everywhere randomness is needed.
//
// Stream derivation: split(base, i) hashes base + (i+1)*GOLDEN through the
// SplitMix64 finalizer, so derived seeds are decorrelated and reproducible.
// Sampling streams: xoshiro256++ seeded from four SplitMix64 outputs.
// Bit determinism holds within this implementation; cross-language equality
// is not a goal.

namespace modemflow::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// i-th derived seed of a base seed.
inline std::uint64_t split(std::uint64_t base, std::uint64_t i) {
    return splitmix64_finalize(base + (i + 1) * kGolden);
}

// Tagged two-level split: independent families of streams per purpose.
inline std::uint64_t split(std::uint64_t base, std::uint64_t tag, std::uint64_t i) {
    return split(split(base, tag), i);
}

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& lane : state_) {
            sm += kGolden;
            lane = splitmix64_finalize(sm);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0, 1]; never returns 0 so it is safe under log()
    double uniform01() {
        return 1.0 - static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // exponential with the given rate (events per unit time)
    double exponential(double rate) {
        return -std::log(uniform01()) / rate;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace modemflow::rng
