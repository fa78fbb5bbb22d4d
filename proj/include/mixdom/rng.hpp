#pragma once

#include <cmath>
#include <cstdint>

namespace mixdom {

/// splitmix64 finalizer: a cheap, well-mixed 64-bit permutation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Small deterministic RNG: splitmix64 for uniforms, Marsaglia polar method
/// for normals. Streams are derived by key so that replicates and independent
/// sub-draws (e.g. a random covariate path) never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (polar method, spare value cached).
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Independent stream derived from this generator's current state and a
  /// key; does not advance this generator. Derive sub-streams before drawing.
  Rng derive(std::uint64_t key) const { return Rng(mix64(state_ ^ mix64(key + 1))); }

  std::uint64_t seed() const { return state_; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed derivation for replicated experiments: distinct (scenario, replicate)
/// pairs give distinct, reproducible streams from one base seed.
struct RngSpec {
  std::uint64_t base_seed = 1;

  std::uint64_t replicate_seed(std::uint64_t scenario_id, std::uint64_t replicate) const {
    std::uint64_t s = mix64(base_seed ^ mix64(scenario_id + 0x51ed270b0f6ad243ULL));
    return mix64(s ^ mix64(replicate + 0x63d2cbabd4a9c135ULL));
  }
};

}  // namespace mixdom
