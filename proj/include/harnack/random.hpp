#pragma once

#include <cstdint>
#include <random>

#include "harnack/types.hpp"

namespace harnack {

/// Seeded generator with a platform-independent output stream: mt19937_64 for
/// the raw bits, 53-bit uniforms, Box-Muller normals. std::normal_distribution
/// is implementation-defined and is not used.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                       ///< [0, 1)
  double uniform(double lo, double hi);   ///< [lo, hi)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi); ///< inclusive
  double normal();
  Complex complex_normal();               ///< E|z|^2 = 1
  Vector unit_vector(Eigen::Index dim);
  std::uint64_t next_seed() { return engine_(); }

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Ginibre sample with E|g_ij|^2 = 1/dim.
Matrix ginibre(Eigen::Index dim, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre sample with phase correction).
Matrix haar_unitary(Eigen::Index dim, Rng& rng);

} // namespace harnack
