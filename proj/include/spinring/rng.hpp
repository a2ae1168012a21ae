#ifndef SPINRING_RNG_HPP
#define SPINRING_RNG_HPP

#include <cstdint>

namespace spinring {

// SplitMix64 (Steele, Lea & Flood 2014): a tiny counter-based generator with
// a full-period 64-bit state walk.  Chosen over a Mersenne Twister because
// the stream is a pure function of (seed, counter), which keeps sampled
// chains bit-identical across platforms and trivially splittable.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

}  // namespace spinring

#endif  // SPINRING_RNG_HPP
