#ifndef GINIFIELD_RNG_HPP
#define GINIFIELD_RNG_HPP

#include <cstdint>

namespace ginifield {

// Counter-based uniform stream (splitmix64 finalizer over a strided counter).
// A (key, counter) pair fully determines every draw, so streams can be split
// per replicate and replayed independently of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); safe as inverse-cdf input.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Substream key for replicate r: seed xor hash(r).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ CounterRng::mix64(index + 0x632BE59BD9B4E019ULL);
}

}  // namespace ginifield

#endif  // GINIFIELD_RNG_HPP
