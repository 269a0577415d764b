#pragma once

#include <cstdint>

namespace duelli {

// Counter-based stream built on the splitmix64 finalizer. Output i is a pure
// function of (key, i), so streams are reproducible regardless of evaluation
// order, and split() derives statistically independent child streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kGolden)) {}

  std::uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Independent child stream; does not consume draws from this stream.
  Rng split(std::uint64_t tag) const {
    Rng child;
    child.key_ = mix(key_ ^ mix(tag + 0x632be59bd9b4e019ull));
    return child;
  }

 private:
  Rng() = default;

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace duelli
