#include "pwent/separability.hpp"

#include <algorithm>
#include <stdexcept>

namespace pwent {

namespace {

CVector dominant_eigenvector(const DensityMatrix& rho) {
  return hermitian_eig(rho.mat()).eigvecs.col(0);
}

// Lexicographic k-subsets of {0..m-1}.
template <typename Visit>
bool for_each_subset_of_size(int m, int k, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (visit(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

void factor_recursive(const PartySet& parties, const PureState& local, double tol, Factorization& out) {
  const int m = static_cast<int>(parties.size());
  if (m == 1) {
    out.factors.push_back({parties, local});
    return;
  }
  std::optional<PartySet> split;
  for (int size = 1; size <= m / 2 && !split; ++size) {
    for_each_subset_of_size(m, size, [&](const std::vector<int>& subset) {
      const double s = linear_entropy(partial_trace(local, subset));
      if (s >= tol && s <= 10.0 * tol) out.borderline = true;
      if (s < tol) {
        split = subset;
        return true;
      }
      return false;
    });
  }
  if (!split) {
    out.factors.push_back({parties, local});
    return;
  }
  const PartySet rest = set_difference(local.shape().all_parties(), *split);
  for (const PartySet* side : {static_cast<const PartySet*>(&*split), &rest}) {
    PartySet global;
    for (int i : *side) global.push_back(parties[static_cast<std::size_t>(i)]);
    const DensityMatrix marginal = partial_trace(local, *side);
    factor_recursive(global, PureState::normalized(marginal.shape(), dominant_eigenvector(marginal)), tol, out);
  }
}

}  // namespace

std::size_t Factorization::factor_of(int party) const {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (std::binary_search(factors[i].parties.begin(), factors[i].parties.end(), party)) return i;
  throw std::out_of_range("Factorization::factor_of: party not present");
}

std::vector<PartySet> Factorization::party_sets() const {
  std::vector<PartySet> sets;
  for (const auto& f : factors) sets.push_back(f.parties);
  return sets;
}

Factorization finest_factorization(const PureState& psi, double tol) {
  if (psi.parties() > 12) throw std::invalid_argument("finest_factorization: at most 12 parties supported");
  Factorization out;
  out.tol = tol;
  factor_recursive(psi.shape().all_parties(), psi, tol, out);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return a.parties.front() < b.parties.front(); });

  // Carry the global phase of psi on the first factor.
  const CVector prod = reconstruct(out, psi.shape()).amp();
  const cplx c = prod.dot(psi.amp());
  if (std::abs(c) > 0.0) {
    Factor& first = out.factors.front();
    first.state = PureState::normalized(first.state.shape(), first.state.amp() * (c / std::abs(c)));
  }
  return out;
}

PureState reconstruct(const Factorization& f, const RegisterShape& shape) {
  std::vector<PartySet> blocks;
  std::vector<CVector> amps;
  for (const auto& factor : f.factors) {
    blocks.push_back(factor.parties);
    amps.push_back(factor.state.amp());
  }
  return PureState::normalized(shape, embed_product(shape, blocks, amps));
}

PartitewiseVerdict is_kpw_separable_pure(const PureState& psi, const std::vector<int>& designated, double tol) {
  validate_designated(psi.shape(), designated);
  const auto fact = finest_factorization(psi, tol);
  PartitewiseVerdict verdict;
  verdict.borderline = fact.borderline;

  std::vector<int> owner(fact.factors.size(), -1);
  for (std::size_t i = 0; i < designated.size(); ++i) {
    const auto f = fact.factor_of(designated[i]);
    if (owner[f] != -1) return verdict;
    owner[f] = static_cast<int>(i);
  }
  verdict.separable = true;
  PartitionSpec witness{psi.shape(), std::vector<PartySet>(designated.size()), designated};
  for (std::size_t f = 0; f < fact.factors.size(); ++f) {
    auto& block = witness.blocks[static_cast<std::size_t>(std::max(owner[f], 0))];
    block = set_union(block, fact.factors[f].parties);
  }
  verdict.witness = std::move(witness);
  return verdict;
}

bool is_product_reduced(const DensityMatrix& rho, double tol) {
  std::vector<PartySet> blocks;
  std::vector<CMatrix> mats;
  for (int p = 0; p < rho.parties(); ++p) {
    blocks.push_back({p});
    mats.push_back(partial_trace(rho, {p}).mat());
  }
  return (rho.mat() - embed_product(rho.shape(), blocks, mats)).norm() < tol;
}

MixedCheckReport mixed_kpw_necessary_checks(const DensityMatrix& rho, const std::vector<int>& designated,
                                            double tol) {
  validate_designated(rho.shape(), designated);
  const DensityMatrix reduced = partial_trace(rho, make_party_set(designated));
  MixedCheckReport report;
  report.product_reduced = is_product_reduced(reduced, tol);
  report.global_pure = numerical_rank(rho) == 1;

  report.marginal_ppt_all_cuts = true;
  const int k = reduced.parties();
  // A cut and its complement have transposed partial transposes, so only
  // cuts that exclude the last party are visited.
  for (unsigned mask = 1; mask < (1u << (k - 1)); ++mask) {
    PartySet cut;
    for (int p = 0; p < k - 1; ++p)
      if (mask & (1u << p)) cut.push_back(p);
    if (hermitian_eig(partial_transpose(reduced, cut)).eigvals.back() < -tol) {
      report.marginal_ppt_all_cuts = false;
      break;
    }
  }
  report.certified_entangled = !report.marginal_ppt_all_cuts || (report.global_pure && !report.product_reduced);
  return report;
}

}  // namespace pwent
