#ifndef PWENT_EXTENSIBILITY_HPP_
#define PWENT_EXTENSIBILITY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pwent/convex_roof.hpp"
#include "pwent/measures.hpp"
#include "pwent/tensor_core.hpp"

namespace pwent {

/// h = lin-sqrt with the half-sum genuine form.
MeasureConfig extensibility_config();

/// At least two single-party marginals have rank >= 2.
bool is_pw_extendable(const DensityMatrix& rho);
/// Mixed, and no marginal on a nonempty proper party subset is pure.
bool is_gpw_extendable(const DensityMatrix& rho);

struct PurificationResult {
  /// Original parties followed by one ancilla party of dimension ancilla_dim.
  PureState state;
  int ancilla_dim = 1;
  std::vector<double> eigvals;
};

/// sum_j sqrt(q_j)|psi_j>|j> over the spectral decomposition, eigenvalues
/// descending, ancilla dimension = numerical rank.
PurificationResult canonical_purification(const DensityMatrix& rho);

/// sum_i sqrt(p_i)|psi_i>|i>; throws if the weights are not positive or do not
/// sum to one within 1e-9.
PurificationResult ensemble_purification(const Ensemble& ensemble);

/// Zero unless pairwise extendable; otherwise E_g of the canonical
/// purification under cfg.
double e_ext(const DensityMatrix& rho, const MeasureConfig& cfg = extensibility_config());

enum class ExtensionKind { purification, mixture_rho_p, split_rho_alpha };
std::string to_string(ExtensionKind kind);

struct ExtensionSample {
  ExtensionKind kind = ExtensionKind::purification;
  DensityMatrix state;
  double p = 0.0;
  std::vector<int> alpha;  // 0-based spectral indices for split samples
  /// The decomposition the sample is built from.
  Ensemble ensemble;
};

struct ExtensionStrategy {
  std::vector<double> p_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  /// All proper subsets alpha are used up to this rank; above it, singletons.
  int alpha_rank_cap = 4;
};

/// The purification, mixtures p rho (x) rho^C + (1-p)|Phi><Phi|, and splits
/// (1-p_a) rho_2 (x) rho^C + p_a |Phi_a><Phi_a|. Throws on pure input.
std::vector<ExtensionSample> sample_extensions(const DensityMatrix& rho, const ExtensionStrategy& strategy = {});

struct MaximalityEntry {
  std::string label;
  double bound = 0.0;
  bool pass = false;
};

struct MaximalityReport {
  double e_ext = 0.0;
  double tol_cmp = 1e-7;
  std::vector<MaximalityEntry> entries;
  bool pass = false;
};

/// Checks that no sampled extension beats the purification: each sample's
/// E_g upper bound (convex roof seeded with its defining ensemble) must not
/// exceed e_ext + tol_cmp. Requires a mixed state with mixed single-party
/// marginals.
MaximalityReport verify_extension_maximality(const DensityMatrix& rho, const MeasureConfig& cfg, std::uint64_t seed,
                                             const RoofBudget& budget = {1, 0, 0.25, 1e-4, 1500});

}  // namespace pwent

#endif  // PWENT_EXTENSIBILITY_HPP_
