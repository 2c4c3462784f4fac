#ifndef PWENT_MEASURES_HPP_
#define PWENT_MEASURES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pwent/convex_roof.hpp"
#include "pwent/separability.hpp"
#include "pwent/states.hpp"
#include "pwent/tensor_core.hpp"

namespace pwent {

enum class ReducedFunction {
  lin_sq,       // 2(1 - tr rho^2)
  lin_sqrt,     // sqrt(2(1 - tr rho^2))
  von_neumann,  // S(rho) in bits
};

enum class GenuineForm {
  min_parties,  // min_i h(rho^{A_i}), zero unless the state is a single factor
  half_sum,     // (1/2) sum_i h(rho^{A_i}), no biseparability gate
};

/// How E(A1A2) is evaluated on a mixed two-party marginal.
enum class BipartiteMixedRule { wootters_when_2qubit, convex_roof_always };

enum class Aggregate { min, sum, geo };

struct MeasureConfig {
  ReducedFunction h = ReducedFunction::lin_sq;
  GenuineForm genuine = GenuineForm::min_parties;
  BipartiteMixedRule bipartite_rule = BipartiteMixedRule::wootters_when_2qubit;
  double fact_tol = kFactorTolerance;
  /// Values at or below this count as zero in gated measures.
  double zero_tol = 1e-12;
  RoofBudget roof;
  std::uint64_t seed = 42;

  /// Provenance string, e.g. "h=lin-sq,eg=min,e2=wootters,tol=1e-08".
  std::string describe() const;
};

std::string to_string(ReducedFunction h);
std::string to_string(GenuineForm g);
std::string to_string(Aggregate a);
ReducedFunction parse_reduced_function(const std::string& s);
GenuineForm parse_genuine_form(const std::string& s);

double h_value(const DensityMatrix& rho, ReducedFunction h);

/// h of the marginal on X.
double bipartite_E_pure(const PureState& psi, const PartySet& block, ReducedFunction h);

/// max(0, l1 - l2 - l3 - l4) for a two-qubit state.
double wootters_concurrence(const DensityMatrix& rho);

/// (||rho^{T_X}||_1 - 1) / 2.
double negativity(const DensityMatrix& rho, const PartySet& subset);

/// E_g of a pure state per cfg.genuine. Two-party states reduce to h of one
/// marginal under either form.
double genuine_measure_pure(const PureState& psi, const MeasureConfig& cfg);

/// E(AB) of a two-party state: Wootters concurrence for two qubits under
/// wootters_when_2qubit, otherwise the convex roof of h over the first party.
double bipartite_E_mixed(const DensityMatrix& rho_ab, const MeasureConfig& cfg);

/// GEM-based k-PWEM. For k = 2: E(A1A2) plus E_g of the factor holding both
/// designated parties when that factor has three or more parties. For k >= 3:
/// sum of E_g over the factors holding at least two designated parties.
double pwem_gem_pure(const PureState& psi, const std::vector<int>& designated, const MeasureConfig& cfg);

/// Genuine k-PWEM: E_g of the factor holding every designated party, else 0.
double gpwem_gem_pure(const PureState& psi, const std::vector<int>& designated, const MeasureConfig& cfg);

/// Bipartition-based family. inner_i = min over Z_i within the undesignated
/// parties (Z_i may be empty) of h(rho^{A_i Z_i}).
double pwem_bipartition(const PureState& psi, const std::vector<int>& designated, ReducedFunction h,
                        Aggregate variant, double zero_tol = 1e-12);

/// Same structure with the negativity of the cut A_i Z_i | rest. Works on
/// mixed states directly; not faithful.
double pwem_negativity(const DensityMatrix& rho, const std::vector<int>& designated, Aggregate variant,
                       double zero_tol = 1e-12);

struct GeometricBudget {
  int restarts = 32;
  int max_sweeps = 500;
  double gain_tol = 1e-10;
  std::uint64_t seed = 42;
};

struct GeometricResult {
  /// 1 - max_overlap: an upper bound on the geometric measure.
  double value = 1.0;
  /// Squared overlap actually achieved by `witness` (a certified lower bound
  /// on the true maximum).
  double max_overlap = 0.0;
  PartitionSpec best_partition;
  std::vector<CVector> block_states;
};

/// Distance to the admissible product states via block-wise see-saw.
GeometricResult geometric_pwem(const PureState& psi, const std::vector<int>& designated,
                               const GeometricBudget& budget = {});

struct RelativeEntropyBound {
  double value = 0.0;  // +infinity when no candidate has compatible support
  bool finite = false;
  std::string best_candidate;
};

/// Minimum of S(rho||sigma) over products of rho's block marginals per
/// admissible partition, their dephased versions, and `extra`. An upper bound
/// on the relative-entropy measure, never the measure itself.
RelativeEntropyBound relative_entropy_pwem_upper(const DensityMatrix& rho, const std::vector<int>& designated,
                                                 std::span<const DensityMatrix> extra = {});

/// Convex-roof upper bound of a pure-state measure for mixed input.
RoofResult roof_upper_bound(const DensityMatrix& rho, const PureMeasure& measure, const MeasureConfig& cfg);

}  // namespace pwent

#endif  // PWENT_MEASURES_HPP_
