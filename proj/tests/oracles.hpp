#ifndef PWENT_TESTS_ORACLES_HPP_
#define PWENT_TESTS_ORACLES_HPP_

// Brute-force reference implementations used only by tests. They share no
// code paths with the library beyond the storage types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline std::vector<int> digits_of(std::size_t idx, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = static_cast<int>(idx % static_cast<std::size_t>(dims[i]));
    idx /= static_cast<std::size_t>(dims[i]);
  }
  return d;
}

inline std::size_t total_dim(const std::vector<int>& dims) {
  std::size_t t = 1;
  for (int d : dims) t *= static_cast<std::size_t>(d);
  return t;
}

// Reduced density matrix of |psi> on `keep` (sorted), by explicit sums over
// all pairs of basis states that agree on the traced-out digits.
inline Mat reduce(const Vec& psi, const std::vector<int>& dims, const std::vector<int>& keep) {
  std::vector<int> kd;
  for (int p : keep) kd.push_back(dims[static_cast<std::size_t>(p)]);
  const std::size_t n = total_dim(dims), m = total_dim(kd);
  Mat out = Mat::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits_of(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits_of(j, dims);
      bool agree = true;
      for (std::size_t p = 0; p < dims.size() && agree; ++p)
        if (!std::binary_search(keep.begin(), keep.end(), static_cast<int>(p)) && di[p] != dj[p]) agree = false;
      if (!agree) continue;
      std::size_t ri = 0, rj = 0;
      for (int p : keep) {
        ri = ri * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(di[static_cast<std::size_t>(p)]);
        rj = rj * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(dj[static_cast<std::size_t>(p)]);
      }
      out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj)) += psi(static_cast<Eigen::Index>(i)) * std::conj(psi(static_cast<Eigen::Index>(j)));
    }
  }
  return out;
}

inline bool marginal_is_pure(const Vec& psi, const std::vector<int>& dims, const std::vector<int>& keep,
                             double tol = 1e-8) {
  const Mat r = reduce(psi, dims, keep);
  return 1.0 - r.squaredNorm() < tol;
}

// All set partitions of {0..n-1}, blocks sorted, via restricted growth strings.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int max_label) -> void {
    if (i == n) {
      std::vector<std::vector<int>> blocks(static_cast<std::size_t>(max_label + 1));
      for (int p = 0; p < n; ++p) blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(p)])].push_back(p);
      out.push_back(blocks);
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      a[static_cast<std::size_t>(i)] = l;
      self(self, i + 1, std::max(max_label, l));
    }
  };
  if (n > 0) {
    a[0] = 0;
    rec(rec, 1, 0);
  }
  return out;
}

// A pure state is a product over a partition iff every block marginal is pure.
inline bool splits_over(const Vec& psi, const std::vector<int>& dims, const std::vector<std::vector<int>>& blocks,
                        double tol = 1e-8) {
  for (const auto& b : blocks)
    if (b.size() < dims.size() && !marginal_is_pure(psi, dims, b, tol)) return false;
  return true;
}

// Finest factorization: the admissible split with the most blocks.
inline std::vector<std::vector<int>> finest_partition(const Vec& psi, const std::vector<int>& dims) {
  std::vector<std::vector<int>> best{{}};
  for (int p = 0; p < static_cast<int>(dims.size()); ++p) best[0].push_back(p);
  for (const auto& part : set_partitions(static_cast<int>(dims.size())))
    if (part.size() > best.size() && splits_over(psi, dims, part)) best = part;
  std::sort(best.begin(), best.end());
  return best;
}

// Brute-force k-partitewise separability: try every assignment of the
// undesignated parties to the designated blocks.
inline bool kpw_separable(const Vec& psi, const std::vector<int>& dims, const std::vector<int>& designated) {
  const int n = static_cast<int>(dims.size());
  const int k = static_cast<int>(designated.size());
  std::vector<int> rest;
  for (int p = 0; p < n; ++p)
    if (std::find(designated.begin(), designated.end(), p) == designated.end()) rest.push_back(p);
  std::size_t combos = 1;
  for (std::size_t i = 0; i < rest.size(); ++i) combos *= static_cast<std::size_t>(k);
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) blocks[static_cast<std::size_t>(i)].push_back(designated[static_cast<std::size_t>(i)]);
    std::size_t code = c;
    for (int r : rest) {
      blocks[code % static_cast<std::size_t>(k)].push_back(r);
      code /= static_cast<std::size_t>(k);
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    if (splits_over(psi, dims, blocks)) return true;
  }
  return false;
}

// Product of block states, assembled digit by digit.
inline Vec product_state(const std::vector<int>& dims, const std::vector<std::vector<int>>& blocks,
                         const std::vector<Vec>& block_amps) {
  const std::size_t n = total_dim(dims);
  Vec out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits_of(i, dims);
    cplx amp = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t idx = 0;
      for (int p : blocks[b])
        idx = idx * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(d[static_cast<std::size_t>(p)]);
      amp *= block_amps[b](static_cast<Eigen::Index>(idx));
    }
    out(static_cast<Eigen::Index>(i)) = amp;
  }
  return out;
}

// Two-qubit concurrence from the non-Hermitian product rho * rho~, solved
// with Eigen's general complex eigensolver.
inline double concurrence(const Mat& rho) {
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Mat tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(rho * tilde);
  std::vector<double> lam;
  for (Eigen::Index i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(lam.rbegin(), lam.rend());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

}  // namespace oracle

#endif  // PWENT_TESTS_ORACLES_HPP_
