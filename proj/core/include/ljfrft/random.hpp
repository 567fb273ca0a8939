#pragma once

#include <cstdint>
#include <random>

namespace ljfrft {

/// Seedable generator with a fixed, platform-independent output stream:
/// std::mt19937_64 for raw bits, 53-bit uniforms, Box-Muller normals.
/// (std::normal_distribution is implementation-defined, so it is avoided.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ljfrft
