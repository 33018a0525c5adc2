#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace itd {

/// Seeded generator whose derived draws are identical on every platform.
///
/// std::mt19937_64 output is fully specified by the standard, but the
/// standard distributions and std::shuffle are not, so the helpers below
/// derive uniforms, indices and normals from the raw engine directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [0, 1].
  double uniform_closed01() {
    return static_cast<double>(next() >> 11) / static_cast<double>((1ULL << 53) - 1);
  }

  /// Uniform integer in [0, n) by rejection; n must be > 0.
  std::size_t index(std::size_t n);

  /// Standard normal via Box-Muller (one draw per call, no caching).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace itd
