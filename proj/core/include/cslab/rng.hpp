#pragma once

#include <cstdint>

namespace cslab {

// Reproducible randomness.
//
// Generator: SplitMix64. The state advances by the odd constant
// kGolden = 0x9e3779b97f4a7c15 and each output is the finalizer
//
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   z =  z ^ (z >> 31)
//
// applied to the new state. Stream seeding for trial/stream index s under
// master seed m is state0 = mix(m ^ (kGolden * s)). Counter-keyed draws
// (used where trajectories must not depend on evaluation order) hash a
// (key, counter_a, counter_b) triple through the same finalizer, so no
// generator state is shared between cells or threads.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Master seed plus stream (trial) index.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  constexpr std::uint64_t state() const { return mix64(master ^ (kGolden * stream)); }
  friend constexpr bool operator==(const Seed&, const Seed&) = default;
};

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}
  constexpr explicit SplitMix64(Seed seed) : state_(seed.state()) {}

  constexpr std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }
  constexpr std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return to_unit(next()); }

  static constexpr double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Counter-based draw keyed by (key, a, b); a pure function of its inputs.
constexpr std::uint64_t keyed_bits(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(key ^ (kGolden * (a + 1))) + kGolden * (b + 1));
}

constexpr double keyed_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  return SplitMix64::to_unit(keyed_bits(key, a, b));
}

}  // namespace cslab
