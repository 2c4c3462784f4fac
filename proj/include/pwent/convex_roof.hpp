#ifndef PWENT_CONVEX_ROOF_HPP_
#define PWENT_CONVEX_ROOF_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pwent/tensor_core.hpp"

namespace pwent {

using PureMeasure = std::function<double(const PureState&)>;

/// Pure-state decomposition {p_i, |psi_i>} of a mixed state.
struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> states;

  std::size_t size() const { return weights.size(); }
};

CMatrix ensemble_matrix(const Ensemble& e);

struct RoofBudget {
  /// Total number of starts; the spectral ensemble and every seeded ensemble
  /// always run, random isometries fill the remainder.
  int restarts = 8;
  /// Ensemble size for spectral and random starts; 0 means twice the rank.
  int max_ensemble = 0;
  double initial_step = 0.5;
  double final_step = 1e-6;
  long max_evaluations = 200000;
};

struct RoofResult {
  /// Upper bound on the convex roof: the ensemble average of the measure
  /// over `ensemble`.
  double value = 0.0;
  Ensemble ensemble;
  long iterations = 0;
  long evaluations = 0;
  bool converged = false;
  /// Start that produced the result: 0 spectral, then seeds, then random.
  int best_start = 0;
};

/// Minimizes the ensemble average of `measure` over decompositions of `rho`.
/// Decompositions are parameterized as m x r isometries U acting on the
/// spectral ensemble, |psi~_i> = sum_j U_ij sqrt(l_j)|e_j>, with U obtained by
/// Gram-Schmidt from a raw complex matrix; the raw entries are searched by a
/// coordinate pattern search whose step halves from initial_step to
/// final_step. Seeded ensembles must decompose `rho` exactly (within 1e-8).
RoofResult convex_roof_min(const DensityMatrix& rho, const PureMeasure& measure, const RoofBudget& budget,
                           std::uint64_t seed, std::span<const Ensemble> seeded = {});

}  // namespace pwent

#endif  // PWENT_CONVEX_ROOF_HPP_
