#include "pwent/extensibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pwent {

namespace {

CVector basis_vector(int dim, int k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

bool is_pure_marginal(const DensityMatrix& rho, const PartySet& keep) {
  return numerical_rank(partial_trace(rho, keep)) <= 1;
}

}  // namespace

MeasureConfig extensibility_config() {
  MeasureConfig cfg;
  cfg.h = ReducedFunction::lin_sqrt;
  cfg.genuine = GenuineForm::half_sum;
  return cfg;
}

bool is_pw_extendable(const DensityMatrix& rho) {
  int mixed = 0;
  for (int p = 0; p < rho.parties(); ++p)
    if (!is_pure_marginal(rho, {p})) ++mixed;
  return mixed >= 2;
}

bool is_gpw_extendable(const DensityMatrix& rho) {
  if (numerical_rank(rho) <= 1) return false;
  const int n = rho.parties();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    PartySet keep;
    for (int p = 0; p < n; ++p)
      if (mask & (1u << p)) keep.push_back(p);
    if (is_pure_marginal(rho, keep)) return false;
  }
  return true;
}

PurificationResult canonical_purification(const DensityMatrix& rho) {
  const auto spec = hermitian_eig(rho.mat());
  int rank = 0;
  while (rank < static_cast<int>(spec.eigvals.size()) && spec.eigvals[static_cast<std::size_t>(rank)] > kZeroEigenvalue)
    ++rank;
  rank = std::max(rank, 1);
  const RegisterShape shape = rho.shape().append(rank);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(shape.total()));
  std::vector<double> eigvals;
  for (int j = 0; j < rank; ++j) {
    const double q = std::max(0.0, spec.eigvals[static_cast<std::size_t>(j)]);
    eigvals.push_back(q);
    amp += std::sqrt(q) * kron(CVector(spec.eigvecs.col(j)), basis_vector(rank, j));
  }
  return {PureState::normalized(shape, std::move(amp)), rank, std::move(eigvals)};
}

PurificationResult ensemble_purification(const Ensemble& ensemble) {
  if (ensemble.size() == 0) throw std::invalid_argument("ensemble_purification: empty ensemble");
  double total = 0.0;
  for (double w : ensemble.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("ensemble_purification: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("ensemble_purification: weights must sum to one");
  const int m = static_cast<int>(ensemble.size());
  const RegisterShape shape = ensemble.states.front().shape().append(m);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(shape.total()));
  for (int i = 0; i < m; ++i) {
    const auto& s = ensemble.states[static_cast<std::size_t>(i)];
    if (!(s.shape() == ensemble.states.front().shape()))
      throw std::invalid_argument("ensemble_purification: members have different shapes");
    amp += std::sqrt(ensemble.weights[static_cast<std::size_t>(i)]) * kron(s.amp(), basis_vector(m, i));
  }
  return {PureState::normalized(shape, std::move(amp)), m, ensemble.weights};
}

double e_ext(const DensityMatrix& rho, const MeasureConfig& cfg) {
  if (!is_pw_extendable(rho)) return 0.0;
  return genuine_measure_pure(canonical_purification(rho).state, cfg);
}

std::string to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::purification: return "purification";
    case ExtensionKind::mixture_rho_p: return "rho_p";
    case ExtensionKind::split_rho_alpha: return "rho_alpha";
  }
  return "?";
}

std::vector<ExtensionSample> sample_extensions(const DensityMatrix& rho, const ExtensionStrategy& strategy) {
  const auto spec = hermitian_eig(rho.mat());
  int rank = 0;
  while (rank < static_cast<int>(spec.eigvals.size()) && spec.eigvals[static_cast<std::size_t>(rank)] > kZeroEigenvalue)
    ++rank;
  if (rank < 2) throw std::invalid_argument("sample_extensions: input state must be mixed");

  const auto pur = canonical_purification(rho);
  const RegisterShape ext_shape = pur.state.shape();
  const auto& q = pur.eigvals;
  CMatrix rho_c = CMatrix::Zero(rank, rank);
  for (int l = 0; l < rank; ++l) rho_c(l, l) = q[static_cast<std::size_t>(l)];

  auto eigvec = [&](int j) { return CVector(spec.eigvecs.col(j)); };
  // Members (q_j q_l, |psi_j>|l>) for j in `js`, scaled by `scale`.
  auto product_members = [&](const std::vector<int>& js, double scale, Ensemble& e) {
    for (int j : js)
      for (int l = 0; l < rank; ++l) {
        const double w = scale * q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(l)];
        if (w <= 0.0) continue;
        e.weights.push_back(w);
        e.states.push_back(PureState::normalized(ext_shape, kron(eigvec(j), basis_vector(rank, l))));
      }
  };

  std::vector<ExtensionSample> out;
  {
    ExtensionSample s{ExtensionKind::purification, DensityMatrix(pur.state), 0.0, {}, {}};
    s.ensemble.weights = {1.0};
    s.ensemble.states = {pur.state};
    out.push_back(std::move(s));
  }

  std::vector<int> all(static_cast<std::size_t>(rank));
  for (int j = 0; j < rank; ++j) all[static_cast<std::size_t>(j)] = j;
  const CMatrix phi_proj = pur.state.amp() * pur.state.amp().adjoint();
  const CMatrix rho_rho_c = kron(rho.mat(), rho_c);
  for (double p : strategy.p_grid) {
    ExtensionSample s{ExtensionKind::mixture_rho_p, make_unchecked(ext_shape, p * rho_rho_c + (1.0 - p) * phi_proj), p,
                      {}, {}};
    s.ensemble.weights.push_back(1.0 - p);
    s.ensemble.states.push_back(pur.state);
    product_members(all, p, s.ensemble);
    out.push_back(std::move(s));
  }

  std::vector<std::vector<int>> alphas;
  if (rank <= strategy.alpha_rank_cap) {
    for (unsigned mask = 1; mask + 1 < (1u << rank); ++mask) {
      std::vector<int> a;
      for (int j = 0; j < rank; ++j)
        if (mask & (1u << j)) a.push_back(j);
      alphas.push_back(std::move(a));
    }
  } else {
    for (int j = 0; j < rank; ++j) alphas.push_back({j});
  }

  for (const auto& alpha : alphas) {
    std::vector<int> rest;
    double p_alpha = 0.0;
    CVector phi_alpha = CVector::Zero(static_cast<Eigen::Index>(ext_shape.total()));
    for (int j = 0; j < rank; ++j) {
      const double qj = q[static_cast<std::size_t>(j)];
      if (std::find(alpha.begin(), alpha.end(), j) != alpha.end()) {
        p_alpha += qj;
        phi_alpha += std::sqrt(qj) * kron(eigvec(j), basis_vector(rank, j));
      } else {
        rest.push_back(j);
      }
    }
    phi_alpha /= std::sqrt(p_alpha);
    CMatrix rho2 = CMatrix::Zero(rho.mat().rows(), rho.mat().cols());
    for (int j : rest) rho2 += q[static_cast<std::size_t>(j)] * eigvec(j) * eigvec(j).adjoint();
    // rho2 carries its weight (1 - p_alpha) already.
    const CMatrix mat = kron(rho2, rho_c) + p_alpha * phi_alpha * phi_alpha.adjoint();
    ExtensionSample s{ExtensionKind::split_rho_alpha, make_unchecked(ext_shape, mat), p_alpha, alpha, {}};
    s.ensemble.weights.push_back(p_alpha);
    s.ensemble.states.push_back(PureState::normalized(ext_shape, phi_alpha));
    product_members(rest, 1.0, s.ensemble);
    out.push_back(std::move(s));
  }
  return out;
}

MaximalityReport verify_extension_maximality(const DensityMatrix& rho, const MeasureConfig& cfg, std::uint64_t seed,
                                             const RoofBudget& budget) {
  if (numerical_rank(rho) < 2) throw std::invalid_argument("verify_extension_maximality: input state must be mixed");
  if (!is_pw_extendable(rho))
    throw std::invalid_argument("verify_extension_maximality: two single-party marginals must be mixed");
  MaximalityReport report;
  report.e_ext = e_ext(rho, cfg);
  report.pass = true;
  const PureMeasure eg = [&cfg](const PureState& s) { return genuine_measure_pure(s, cfg); };
  const auto samples = sample_extensions(rho);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const auto roof = convex_roof_min(s.state, eg, budget, seed + i, std::span<const Ensemble>(&s.ensemble, 1));
    MaximalityEntry entry;
    char buf[64];
    if (s.kind == ExtensionKind::split_rho_alpha) {
      std::string a;
      for (int j : s.alpha) a += (a.empty() ? "" : ",") + std::to_string(j + 1);
      entry.label = to_string(s.kind) + " {" + a + "}";
    } else if (s.kind == ExtensionKind::mixture_rho_p) {
      std::snprintf(buf, sizeof buf, " p=%.2f", s.p);
      entry.label = to_string(s.kind) + buf;
    } else {
      entry.label = to_string(s.kind);
    }
    entry.bound = roof.value;
    entry.pass = roof.value <= report.e_ext + report.tol_cmp;
    report.pass = report.pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace pwent
