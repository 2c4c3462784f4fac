#include "pwent/random.hpp"

#include <cmath>
#include <numbers>

namespace pwent {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x5DEECE66DULL))), seed_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

Rng Rng::fork(std::uint64_t stream) { return Rng(splitmix64(seed_) ^ next_u64(), stream); }

CMatrix random_unitary(int d, Rng& rng) {
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

std::vector<CMatrix> random_local_unitaries(const RegisterShape& shape, Rng& rng) {
  std::vector<CMatrix> us;
  us.reserve(static_cast<std::size_t>(shape.parties()));
  for (int p = 0; p < shape.parties(); ++p) us.push_back(random_unitary(shape.dim(p), rng));
  return us;
}

}  // namespace pwent
