#ifndef PWENT_SEPARABILITY_HPP_
#define PWENT_SEPARABILITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pwent/states.hpp"
#include "pwent/tensor_core.hpp"

namespace pwent {

inline constexpr double kFactorTolerance = 1e-8;

struct Factor {
  PartySet parties;
  PureState state;  // on shape.restrict_to(parties)
};

/// Finest tensor-product decomposition of a pure state into non-biseparable
/// factors, sorted by smallest party index.
struct Factorization {
  std::vector<Factor> factors;
  double tol = kFactorTolerance;
  /// Set when some marginal entropy fell in [tol, 10 tol].
  bool borderline = false;

  /// Index of the factor holding `party`.
  std::size_t factor_of(int party) const;
  std::vector<PartySet> party_sets() const;
};

/// A subset splits off when the linear entropy of its marginal is below
/// `tol`. Subsets are scanned by increasing size, lexicographically, and both
/// sides are refactored recursively. n must not exceed 12.
Factorization finest_factorization(const PureState& psi, double tol = kFactorTolerance);

/// Product of the factor states in the full register.
PureState reconstruct(const Factorization& f, const RegisterShape& shape);

struct PartitewiseVerdict {
  bool separable = false;
  /// One block per designated party, present when separable.
  std::optional<PartitionSpec> witness;
  bool borderline = false;
};

/// Exact decision for pure states: separable iff no factor of the finest
/// factorization holds two designated parties.
PartitewiseVerdict is_kpw_separable_pure(const PureState& psi, const std::vector<int>& designated,
                                         double tol = kFactorTolerance);

/// True iff rho is within `tol` (Frobenius) of the product of its single-party
/// marginals.
bool is_product_reduced(const DensityMatrix& rho, double tol = kFactorTolerance);

struct MixedCheckReport {
  bool product_reduced = false;
  bool marginal_ppt_all_cuts = false;
  bool global_pure = false;
  /// Some necessary condition for partitewise separability failed.
  bool certified_entangled = false;

  std::string verdict() const { return certified_entangled ? "entangled" : "inconclusive"; }
};

/// Necessary conditions for a state to be partitewise separable up to the
/// designated parties. The reduced state on the designated parties must be
/// PPT across every cut; for a pure global state it must also be a product.
/// The product condition does not apply to mixtures, where it is reported but
/// not used for certification.
MixedCheckReport mixed_kpw_necessary_checks(const DensityMatrix& rho, const std::vector<int>& designated,
                                            double tol = kFactorTolerance);

}  // namespace pwent

#endif  // PWENT_SEPARABILITY_HPP_
