// Deterministic splittable RNG: every consumer derives its own substream
// from (seed, identity string), so adding a sampler never perturbs others.
#ifndef SJG_RNG_HPP
#define SJG_RNG_HPP

#include <cstdint>
#include <string>

namespace sjg {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  Rng(uint64_t seed, const std::string& stream_id) {
    state_ = seed ^ fnv1a(stream_id);
    // decorrelate nearby seeds
    splitmix64(state_);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  double uniform01() {  // in [0, 1)
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  uint64_t state_;
};

}  // namespace sjg

#endif
