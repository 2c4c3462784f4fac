#include "pwent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pwent/random.hpp"

namespace pwent {

namespace {

PartySet undesignated_parties(const RegisterShape& shape, const std::vector<int>& designated) {
  return set_difference(shape.all_parties(), make_party_set(designated));
}

// Every subset of `pool` (as a sorted PartySet), including the empty set.
std::vector<PartySet> all_subsets(const PartySet& pool) {
  if (pool.size() > 20) throw std::invalid_argument("too many undesignated parties");
  std::vector<PartySet> out;
  const unsigned count = 1u << pool.size();
  out.reserve(count);
  for (unsigned mask = 0; mask < count; ++mask) {
    PartySet s;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) s.push_back(pool[i]);
    out.push_back(std::move(s));
  }
  return out;
}

double aggregate(const std::vector<double>& inner, Aggregate variant, double zero_tol) {
  const double lowest = *std::min_element(inner.begin(), inner.end());
  switch (variant) {
    case Aggregate::min:
      return lowest;
    case Aggregate::sum: {
      if (lowest <= zero_tol) return 0.0;
      double s = 0.0;
      for (double v : inner) s += v;
      return s;
    }
    case Aggregate::geo: {
      double log_sum = 0.0;
      for (double v : inner) {
        if (v <= 0.0) return 0.0;
        log_sum += std::log(v);
      }
      return std::exp(log_sum / static_cast<double>(inner.size()));
    }
  }
  return lowest;
}

CMatrix sigma_y_y() {
  CMatrix sy(2, 2);
  sy << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return kron(sy, sy);
}

}  // namespace

// --- Configuration ---------------------------------------------------------

std::string to_string(ReducedFunction h) {
  switch (h) {
    case ReducedFunction::lin_sq: return "lin-sq";
    case ReducedFunction::lin_sqrt: return "lin-sqrt";
    case ReducedFunction::von_neumann: return "von-neumann";
  }
  return "?";
}

std::string to_string(GenuineForm g) { return g == GenuineForm::min_parties ? "min" : "half-sum"; }

std::string to_string(Aggregate a) {
  switch (a) {
    case Aggregate::min: return "min";
    case Aggregate::sum: return "sum";
    case Aggregate::geo: return "geo";
  }
  return "?";
}

ReducedFunction parse_reduced_function(const std::string& s) {
  if (s == "lin-sq") return ReducedFunction::lin_sq;
  if (s == "lin-sqrt") return ReducedFunction::lin_sqrt;
  if (s == "von-neumann") return ReducedFunction::von_neumann;
  throw std::invalid_argument("unknown reduced function '" + s + "'");
}

GenuineForm parse_genuine_form(const std::string& s) {
  if (s == "min") return GenuineForm::min_parties;
  if (s == "half-sum" || s == "half") return GenuineForm::half_sum;
  throw std::invalid_argument("unknown genuine form '" + s + "'");
}

std::string MeasureConfig::describe() const {
  char tol[32];
  std::snprintf(tol, sizeof tol, "%.0e", fact_tol);
  return "h=" + to_string(h) + ",eg=" + to_string(genuine) +
         ",e2=" + (bipartite_rule == BipartiteMixedRule::wootters_when_2qubit ? "wootters" : "roof") +
         ",tol=" + tol;
}

// --- Scalar measures -------------------------------------------------------

constexpr double kSqrtFloor = 1e-13;

double h_value(const DensityMatrix& rho, ReducedFunction h) {
  switch (h) {
    case ReducedFunction::lin_sq:
      return std::max(0.0, 2.0 * linear_entropy(rho));
    case ReducedFunction::lin_sqrt: {
      // The square root turns 1e-16 roundoff into 1e-8; snap it to zero.
      const double v = 2.0 * linear_entropy(rho);
      return v < kSqrtFloor ? 0.0 : std::sqrt(v);
    }
    case ReducedFunction::von_neumann:
      return von_neumann_entropy(rho);
  }
  return 0.0;
}

double bipartite_E_pure(const PureState& psi, const PartySet& block, ReducedFunction h) {
  if (block.empty() || static_cast<int>(block.size()) >= psi.parties())
    throw std::invalid_argument("bipartite_E_pure: block must be a nonempty proper subset");
  return h_value(partial_trace(psi, block), h);
}

double wootters_concurrence(const DensityMatrix& rho) {
  if (!(rho.shape() == RegisterShape({2, 2})))
    throw std::invalid_argument("wootters_concurrence: two-qubit state required");
  static const CMatrix yy = sigma_y_y();
  // With rho = X X^dag from the spectrum, the Wootters lambdas are the
  // singular values of the symmetric tau = X^T (Y (x) Y) X. They are read off
  // as eigenvalues of the Hermitian dilation [[0, tau], [tau^dag, 0]], which
  // avoids square roots of near-zero eigenvalues.
  const auto spec = hermitian_eig(rho.mat());
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < spec.eigvals.size(); ++j)
    if (spec.eigvals[j] > kZeroEigenvalue) cols.push_back(static_cast<Eigen::Index>(j));
  const auto r = static_cast<Eigen::Index>(cols.size());
  CMatrix x(4, r);
  for (Eigen::Index j = 0; j < r; ++j)
    x.col(j) = std::sqrt(spec.eigvals[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])]) *
               spec.eigvecs.col(cols[static_cast<std::size_t>(j)]);
  const CMatrix tau = x.transpose() * yy * x;
  CMatrix dilation = CMatrix::Zero(2 * r, 2 * r);
  dilation.topRightCorner(r, r) = tau;
  dilation.bottomLeftCorner(r, r) = tau.adjoint();
  const auto sv = hermitian_eig(dilation, 1e-8).eigvals;  // +sigma descending, then -sigma
  double c = sv.empty() ? 0.0 : sv[0];
  for (Eigen::Index i = 1; i < r; ++i) c -= std::max(0.0, sv[static_cast<std::size_t>(i)]);
  return std::max(0.0, c);
}

double negativity(const DensityMatrix& rho, const PartySet& subset) {
  return std::max(0.0, 0.5 * (trace_norm(partial_transpose(rho, subset)) - 1.0));
}

double genuine_measure_pure(const PureState& psi, const MeasureConfig& cfg) {
  const int n = psi.parties();
  if (n < 2) return 0.0;
  std::vector<double> hs;
  hs.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) hs.push_back(h_value(partial_trace(psi, {p}), cfg.h));
  if (cfg.genuine == GenuineForm::half_sum) {
    double s = 0.0;
    for (double v : hs) s += v;
    return 0.5 * s;
  }
  if (finest_factorization(psi, cfg.fact_tol).factors.size() != 1) return 0.0;
  return *std::min_element(hs.begin(), hs.end());
}

double bipartite_E_mixed(const DensityMatrix& rho_ab, const MeasureConfig& cfg) {
  if (rho_ab.parties() != 2) throw std::invalid_argument("bipartite_E_mixed: two-party state required");
  if (cfg.bipartite_rule == BipartiteMixedRule::wootters_when_2qubit && rho_ab.shape() == RegisterShape({2, 2}))
    return wootters_concurrence(rho_ab);
  const ReducedFunction h = cfg.h;
  return roof_upper_bound(rho_ab, [h](const PureState& s) { return bipartite_E_pure(s, {0}, h); }, cfg).value;
}

// --- GEM-based family ------------------------------------------------------

double pwem_gem_pure(const PureState& psi, const std::vector<int>& designated, const MeasureConfig& cfg) {
  validate_designated(psi.shape(), designated);
  const auto fact = finest_factorization(psi, cfg.fact_tol);
  if (designated.size() == 2) {
    const int a = designated[0], b = designated[1];
    // Different factors: partitewise separable, so exactly zero.
    if (fact.factor_of(a) != fact.factor_of(b)) return 0.0;
    double value = bipartite_E_mixed(partial_trace(psi, make_party_set({a, b})), cfg);
    const auto f = fact.factor_of(a);
    if (f == fact.factor_of(b) && fact.factors[f].parties.size() >= 3)
      value += genuine_measure_pure(fact.factors[f].state, cfg);
    return value;
  }
  double value = 0.0;
  for (const auto& factor : fact.factors) {
    const auto held = std::count_if(designated.begin(), designated.end(), [&](int p) {
      return std::binary_search(factor.parties.begin(), factor.parties.end(), p);
    });
    if (held >= 2) value += genuine_measure_pure(factor.state, cfg);
  }
  return value;
}

double gpwem_gem_pure(const PureState& psi, const std::vector<int>& designated, const MeasureConfig& cfg) {
  validate_designated(psi.shape(), designated);
  const auto fact = finest_factorization(psi, cfg.fact_tol);
  const auto f = fact.factor_of(designated.front());
  for (int p : designated)
    if (fact.factor_of(p) != f) return 0.0;
  return genuine_measure_pure(fact.factors[f].state, cfg);
}

// --- Bipartition families --------------------------------------------------

double pwem_bipartition(const PureState& psi, const std::vector<int>& designated, ReducedFunction h,
                        Aggregate variant, double zero_tol) {
  validate_designated(psi.shape(), designated);
  const auto zs = all_subsets(undesignated_parties(psi.shape(), designated));
  std::vector<double> inner;
  for (int a : designated) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : zs) best = std::min(best, h_value(partial_trace(psi, set_union({a}, z)), h));
    inner.push_back(best);
  }
  return aggregate(inner, variant, zero_tol);
}

double pwem_negativity(const DensityMatrix& rho, const std::vector<int>& designated, Aggregate variant,
                       double zero_tol) {
  validate_designated(rho.shape(), designated);
  const auto zs = all_subsets(undesignated_parties(rho.shape(), designated));
  std::vector<double> inner;
  for (int a : designated) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : zs) best = std::min(best, negativity(rho, set_union({a}, z)));
    inner.push_back(best);
  }
  return aggregate(inner, variant, zero_tol);
}

// --- Distance-based family -------------------------------------------------

namespace {

struct BlockTables {
  std::vector<std::vector<std::size_t>> idx;  // idx[b][i]: sub-index of full index i in block b
  std::vector<std::size_t> dims;
};

BlockTables block_tables(const RegisterShape& shape, const std::vector<PartySet>& blocks) {
  BlockTables t;
  t.idx.assign(blocks.size(), std::vector<std::size_t>(shape.total()));
  for (const auto& b : blocks) t.dims.push_back(shape.subsystem_dim(b));
  for (std::size_t i = 0; i < shape.total(); ++i) {
    const auto dg = shape.digits(i);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t sub = 0;
      for (int p : blocks[b])
        sub = sub * static_cast<std::size_t>(shape.dim(p)) + static_cast<std::size_t>(dg[static_cast<std::size_t>(p)]);
      t.idx[b][i] = sub;
    }
  }
  return t;
}

// <phi_1 ... phi_k | psi> with the block-b factor left open.
CVector contract_except(const CVector& psi, const BlockTables& t, const std::vector<CVector>& phis, std::size_t b) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(t.dims[b]));
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    cplx coef = psi(i);
    for (std::size_t c = 0; c < phis.size(); ++c)
      if (c != b) coef *= std::conj(phis[c](static_cast<Eigen::Index>(t.idx[c][static_cast<std::size_t>(i)])));
    v(static_cast<Eigen::Index>(t.idx[b][static_cast<std::size_t>(i)])) += coef;
  }
  return v;
}

}  // namespace

GeometricResult geometric_pwem(const PureState& psi, const std::vector<int>& designated,
                               const GeometricBudget& budget) {
  const auto partitions = enumerate_admissible_partitions(psi.shape(), designated);
  GeometricResult best;
  best.max_overlap = -1.0;
  for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
    const auto& part = partitions[pi];
    const auto tables = block_tables(psi.shape(), part.blocks);
    const std::size_t k = part.blocks.size();
    for (int restart = 0; restart < std::max(1, budget.restarts); ++restart) {
      Rng rng(budget.seed, pi * 100003u + static_cast<std::uint64_t>(restart));
      std::vector<CVector> phis(k);
      for (std::size_t b = 0; b < k; ++b) {
        if (restart == 0) {
          phis[b] = hermitian_eig(partial_trace(psi, part.blocks[b]).mat()).eigvecs.col(0);
        } else {
          CVector v(static_cast<Eigen::Index>(tables.dims[b]));
          for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
          phis[b] = v.normalized();
        }
      }
      double current = 0.0;
      for (int sweep = 0; sweep < budget.max_sweeps; ++sweep) {
        double value = 0.0;
        for (std::size_t b = 0; b < k; ++b) {
          CVector v = contract_except(psi.amp(), tables, phis, b);
          value = v.squaredNorm();
          if (value > 0.0) phis[b] = v / std::sqrt(value);
        }
        const double gain = value - current;
        current = value;
        if (sweep > 0 && gain < budget.gain_tol) break;
      }
      const CVector prod = embed_product(psi.shape(), part.blocks, phis);
      const double achieved = std::norm(prod.dot(psi.amp()));
      if (achieved > best.max_overlap + 1e-15) {
        best.max_overlap = achieved;
        best.best_partition = part;
        best.block_states = phis;
      }
    }
  }
  best.max_overlap = std::min(1.0, best.max_overlap);
  best.value = std::max(0.0, 1.0 - best.max_overlap);
  return best;
}

RelativeEntropyBound relative_entropy_pwem_upper(const DensityMatrix& rho, const std::vector<int>& designated,
                                                 std::span<const DensityMatrix> extra) {
  RelativeEntropyBound out;
  out.value = std::numeric_limits<double>::infinity();
  auto consider = [&](const DensityMatrix& sigma, const std::string& label) {
    const double v = relative_entropy(rho, sigma);
    if (v < out.value) {
      out.value = v;
      out.best_candidate = label;
    }
  };
  for (const auto& part : enumerate_admissible_partitions(rho.shape(), designated)) {
    std::vector<CMatrix> mats;
    for (const auto& b : part.blocks) mats.push_back(partial_trace(rho, b).mat());
    CMatrix product = embed_product(rho.shape(), part.blocks, mats);
    CMatrix dephased = product.diagonal().asDiagonal();
    consider(make_unchecked(rho.shape(), std::move(product)), "marginal-product " + part.to_string());
    consider(make_unchecked(rho.shape(), std::move(dephased)), "dephased-product " + part.to_string());
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    if (!(extra[i].shape() == rho.shape()))
      throw std::invalid_argument("relative_entropy_pwem_upper: candidate shape mismatch");
    consider(extra[i], "candidate " + std::to_string(i));
  }
  out.finite = std::isfinite(out.value);
  if (!out.finite) out.best_candidate = "no finite bound";
  return out;
}

RoofResult roof_upper_bound(const DensityMatrix& rho, const PureMeasure& measure, const MeasureConfig& cfg) {
  return convex_roof_min(rho, measure, cfg.roof, cfg.seed);
}

}  // namespace pwent
