#pragma once

#include <cstdint>
#include <random>

namespace commvar {

/// Seeded generator with a platform-independent bounded draw. All randomness
/// in the library flows through this type so runs are reproducible by seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace commvar
