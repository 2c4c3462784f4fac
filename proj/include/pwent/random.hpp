#ifndef PWENT_RANDOM_HPP_
#define PWENT_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "pwent/tensor_core.hpp"

namespace pwent {

// Seedable 64-bit generator. The engine is std::mt19937_64 seeded with the
// splitmix64 image of (seed, stream); doubles are built from the top 53 bits
// and normals by Box-Muller, so streams do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double normal();
  cplx complex_normal();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);

  /// Independent child generator for sub-stream `stream`.
  Rng fork(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(int d, Rng& rng);

/// One Haar unitary per party of `shape`.
std::vector<CMatrix> random_local_unitaries(const RegisterShape& shape, Rng& rng);

}  // namespace pwent

#endif  // PWENT_RANDOM_HPP_
