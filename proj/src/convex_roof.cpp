#include "pwent/convex_roof.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pwent/random.hpp"

namespace pwent {

CMatrix ensemble_matrix(const Ensemble& e) {
  if (e.states.empty()) throw std::invalid_argument("ensemble_matrix: empty ensemble");
  const auto dim = e.states.front().amp().size();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < e.size(); ++i) m += e.weights[i] * e.states[i].amp() * e.states[i].amp().adjoint();
  return m;
}

namespace {

constexpr double kNegligibleWeight = 1e-14;

// Orthonormalizes the columns of `x` in place; false if they are dependent.
bool gram_schmidt(CMatrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) x.col(j) -= x.col(i).dot(x.col(j)) * x.col(i);
    const double nrm = x.col(j).norm();
    if (nrm < 1e-10) return false;
    x.col(j) /= nrm;
  }
  return true;
}

class RoofObjective {
 public:
  RoofObjective(const RegisterShape& shape, CMatrix scaled_basis, const PureMeasure& measure)
      : shape_(shape), basis_(std::move(scaled_basis)), measure_(measure) {}

  double operator()(const CMatrix& isometry) {
    ++evaluations;
    const CMatrix vecs = basis_ * isometry.transpose();  // column i is sqrt(p_i)|psi_i>
    double value = 0.0;
    for (Eigen::Index i = 0; i < vecs.cols(); ++i) {
      const double w = vecs.col(i).squaredNorm();
      if (w < kNegligibleWeight) continue;
      value += w * measure_(PureState::normalized(shape_, vecs.col(i)));
    }
    return value;
  }

  Ensemble ensemble(const CMatrix& isometry) const {
    const CMatrix vecs = basis_ * isometry.transpose();
    Ensemble e;
    for (Eigen::Index i = 0; i < vecs.cols(); ++i) {
      const double w = vecs.col(i).squaredNorm();
      if (w < kNegligibleWeight) continue;
      e.weights.push_back(w);
      e.states.push_back(PureState::normalized(shape_, vecs.col(i)));
    }
    return e;
  }

  long evaluations = 0;

 private:
  RegisterShape shape_;
  CMatrix basis_;
  const PureMeasure& measure_;
};

struct SearchOutcome {
  double value;
  CMatrix isometry;
  long sweeps;
  bool converged;
};

SearchOutcome pattern_search(RoofObjective& f, const CMatrix& start, const RoofBudget& budget, long eval_limit) {
  const Eigen::Index rows = start.rows(), cols = start.cols();
  const Eigen::Index n = 2 * rows * cols;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);

  auto isometry_at = [&](const Eigen::VectorXd& v, CMatrix& out) {
    out = start;
    for (Eigen::Index k = 0; k < rows * cols; ++k) out(k % rows, k / rows) += cplx(v(2 * k), v(2 * k + 1));
    return gram_schmidt(out);
  };

  CMatrix best_iso;
  isometry_at(x, best_iso);
  double best = f(best_iso);
  CMatrix trial;
  double step = budget.initial_step;
  long sweeps = 0;
  while (step >= budget.final_step && f.evaluations < eval_limit) {
    ++sweeps;
    bool improved = false;
    for (Eigen::Index c = 0; c < n && f.evaluations < eval_limit; ++c) {
      for (double dir : {1.0, -1.0}) {
        x(c) += dir * step;
        if (isometry_at(x, trial)) {
          const double v = f(trial);
          if (v < best - 1e-15) {
            best = v;
            best_iso = trial;
            improved = true;
            break;
          }
        }
        x(c) -= dir * step;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, best_iso, sweeps, step < budget.final_step};
}

}  // namespace

RoofResult convex_roof_min(const DensityMatrix& rho, const PureMeasure& measure, const RoofBudget& budget,
                           std::uint64_t seed, std::span<const Ensemble> seeded) {
  const auto spec = hermitian_eig(rho.mat());
  Eigen::Index rank = 0;
  while (rank < static_cast<Eigen::Index>(spec.eigvals.size()) &&
         spec.eigvals[static_cast<std::size_t>(rank)] > kZeroEigenvalue)
    ++rank;

  RoofResult result;
  if (rank <= 1) {
    PureState psi = PureState::normalized(rho.shape(), spec.eigvecs.col(0));
    result.value = measure(psi);
    result.ensemble.weights = {1.0};
    result.ensemble.states = {std::move(psi)};
    result.converged = true;
    result.evaluations = 1;
    return result;
  }

  CMatrix basis(spec.eigvecs.rows(), rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    basis.col(j) = std::sqrt(spec.eigvals[static_cast<std::size_t>(j)]) * spec.eigvecs.col(j);

  const Eigen::Index members = budget.max_ensemble > 0 ? std::max<Eigen::Index>(budget.max_ensemble, rank) : 2 * rank;

  std::vector<CMatrix> starts;
  CMatrix spectral = CMatrix::Zero(members, rank);
  spectral.topRows(rank).setIdentity();
  starts.push_back(spectral);

  for (const Ensemble& e : seeded) {
    if ((ensemble_matrix(e) - rho.mat()).norm() > 1e-8)
      throw std::invalid_argument("convex_roof_min: seeded ensemble does not decompose the state");
    CMatrix u(static_cast<Eigen::Index>(e.size()), rank);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (Eigen::Index j = 0; j < rank; ++j)
        u(static_cast<Eigen::Index>(i), j) = std::sqrt(e.weights[i]) *
                                             spec.eigvecs.col(j).dot(e.states[i].amp()) /
                                             std::sqrt(spec.eigvals[static_cast<std::size_t>(j)]);
    if (u.rows() < rank || !gram_schmidt(u))
      throw std::invalid_argument("convex_roof_min: seeded ensemble does not span the support");
    starts.push_back(std::move(u));
  }

  Rng rng(seed);
  for (int s = static_cast<int>(starts.size()); s < budget.restarts; ++s) {
    CMatrix u(members, rank);
    do {
      for (Eigen::Index i = 0; i < members; ++i)
        for (Eigen::Index j = 0; j < rank; ++j) u(i, j) = rng.complex_normal();
    } while (!gram_schmidt(u));
    starts.push_back(std::move(u));
  }

  RoofObjective objective(rho.shape(), basis, measure);
  double best = std::numeric_limits<double>::infinity();
  CMatrix best_iso;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const long remaining = budget.max_evaluations - objective.evaluations;
    const long share = remaining / static_cast<long>(starts.size() - s);
    if (share <= 0 && s > 0) break;
    auto outcome = pattern_search(objective, starts[s], budget, objective.evaluations + std::max(share, 1L));
    result.iterations += outcome.sweeps;
    if (outcome.value < best) {
      best = outcome.value;
      best_iso = std::move(outcome.isometry);
      result.best_start = static_cast<int>(s);
      result.converged = outcome.converged;
    }
  }

  result.ensemble = objective.ensemble(best_iso);
  result.value = 0.0;
  for (std::size_t i = 0; i < result.ensemble.size(); ++i)
    result.value += result.ensemble.weights[i] * measure(result.ensemble.states[i]);
  result.evaluations = objective.evaluations;
  return result;
}

}  // namespace pwent
