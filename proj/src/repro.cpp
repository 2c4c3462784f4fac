#include "pwent/repro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "pwent/extensibility.hpp"
#include "pwent/measures.hpp"
#include "pwent/random.hpp"
#include "pwent/separability.hpp"
#include "pwent/states.hpp"

namespace pwent {

ReportRow make_row(std::string quantity, std::string config, double value, std::optional<double> expected,
                   double tolerance) {
  ReportRow row{std::move(quantity), std::move(config), value, expected, tolerance, true};
  if (expected) row.pass = std::abs(value - *expected) <= tolerance;
  return row;
}

std::string format_rows(const std::vector<ReportRow>& rows) {
  std::string out;
  char buf[512];
  for (const auto& r : rows) {
    if (r.expected) {
      std::snprintf(buf, sizeof buf, "[%s] %-34s value=%.12g expected=%.12g tol=%.0e (%s)\n", r.pass ? "PASS" : "FAIL",
                    r.quantity.c_str(), r.value, *r.expected, r.tolerance, r.config.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "[%s] %-34s value=%.12g (%s)\n", r.pass ? "PASS" : "FAIL", r.quantity.c_str(),
                    r.value, r.config.c_str());
    }
    out += buf;
  }
  return out;
}

bool all_pass(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string CsvTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_csv_number(row[i]);
    out += '\n';
  }
  return out;
}

FigureId parse_figure_id(const std::string& s) {
  if (s == "fig1") return FigureId::fig1;
  if (s == "fig2a") return FigureId::fig2a;
  if (s == "fig2b") return FigureId::fig2b;
  if (s == "fig3a") return FigureId::fig3a;
  if (s == "fig3b") return FigureId::fig3b;
  throw std::invalid_argument("unknown figure '" + s + "'");
}

CsvTable figure_table(FigureId id, int points) {
  if (points < 11) throw std::invalid_argument("figure grid needs at least 11 points per axis");
  const MeasureConfig cfg = extensibility_config();
  auto grid = [points](int i) { return static_cast<double>(i) / static_cast<double>(points - 1); };
  CsvTable table;
  switch (id) {
    case FigureId::fig1:
      table.header = {"p", "t", "S_L(AB)", "E(AB)", "E_ext"};
      for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) {
          const double p = grid(i), t = grid(j);
          const auto rho = fig1_state(p, t);
          table.rows.push_back({p, t, linear_entropy(rho), bipartite_E_mixed(rho, cfg), e_ext(rho, cfg)});
        }
      break;
    case FigureId::fig2a:
    case FigureId::fig2b:
      table.header = {"p", "S_L(AB)", "E(AB)", "E_ext"};
      for (int i = 0; i < points; ++i) {
        const double p = grid(i);
        const auto rho = id == FigureId::fig2a ? fig2a_state(p) : fig2b_state(p);
        table.rows.push_back({p, linear_entropy(rho), bipartite_E_mixed(rho, cfg), e_ext(rho, cfg)});
      }
      break;
    case FigureId::fig3a:
    case FigureId::fig3b:
      table.header = {"p", "pwem_gem(AB)", "gpwem_gem(AB)", "pw_min(AB)", "E(AB)", "E_ext"};
      for (int i = 0; i < points; ++i) {
        const double p = grid(i);
        const auto rho = id == FigureId::fig3a ? fig2a_state(p) : fig2b_state(p);
        const auto psi = canonical_purification(rho).state;
        table.rows.push_back({p, pwem_gem_pure(psi, {0, 1}, cfg), gpwem_gem_pure(psi, {0, 1}, cfg),
                              pwem_bipartition(psi, {0, 1}, cfg.h, Aggregate::min), bipartite_E_mixed(rho, cfg),
                              e_ext(rho, cfg)});
      }
      break;
  }
  return table;
}

// --- Check suites ----------------------------------------------------------

std::vector<ReportRow> check_paper_table() {
  MeasureConfig gem;  // lin-sq, min form
  MeasureConfig genuine;
  genuine.genuine = GenuineForm::half_sum;
  const auto w = make_w(3);
  const auto ghz = make_ghz(3, 2);
  const std::vector<int> ab{0, 1};
  const std::string bip = "h=lin-sq,variant=min";
  const MeasureConfig ext = extensibility_config();

  CMatrix classical = CMatrix::Zero(4, 4);
  classical(0, 0) = classical(3, 3) = 0.5;
  const DensityMatrix rho_cc(RegisterShape({2, 2}), classical);
  const DensityMatrix mm(RegisterShape({2, 2}), CMatrix::Identity(4, 4) / 4.0);

  constexpr double tol = 1e-9;
  return {
      make_row("pwem_gem AB (W3)", gem.describe(), pwem_gem_pure(w, ab, gem), 14.0 / 9.0, tol),
      make_row("pwem_gem AB (GHZ3)", gem.describe(), pwem_gem_pure(ghz, ab, gem), 1.0, tol),
      make_row("pw_min AB (W3)", bip, pwem_bipartition(w, ab, ReducedFunction::lin_sq, Aggregate::min), 8.0 / 9.0,
               tol),
      make_row("pw_min AB (GHZ3)", bip, pwem_bipartition(ghz, ab, ReducedFunction::lin_sq, Aggregate::min), 1.0, tol),
      make_row("gpwem_gem AB (W3)", genuine.describe(), gpwem_gem_pure(w, ab, genuine), 4.0 / 3.0, tol),
      make_row("gpwem_gem AB (GHZ3)", genuine.describe(), gpwem_gem_pure(ghz, ab, genuine), 1.5, tol),
      make_row("e_ext (|00><00|+|11><11|)/2", ext.describe(), e_ext(rho_cc, ext), 1.5, tol),
      make_row("e_ext I4/4", ext.describe(), e_ext(mm, ext), 1.0 + std::sqrt(6.0) / 4.0, tol),
  };
}

namespace {

double max_lu_deviation(const PureState& psi, const std::vector<int>& designated, Rng& rng) {
  const auto us = random_local_unitaries(psi.shape(), rng);
  const PureState moved = apply_local(psi, us);
  MeasureConfig gem;
  MeasureConfig half;
  half.genuine = GenuineForm::half_sum;
  GeometricBudget geo;
  geo.restarts = 4;

  double dev = 0.0;
  auto track = [&dev](double a, double b) { dev = std::max(dev, std::abs(a - b)); };
  track(pwem_gem_pure(psi, designated, gem), pwem_gem_pure(moved, designated, gem));
  track(gpwem_gem_pure(psi, designated, half), gpwem_gem_pure(moved, designated, half));
  for (Aggregate a : {Aggregate::min, Aggregate::sum, Aggregate::geo}) {
    track(pwem_bipartition(psi, designated, ReducedFunction::lin_sq, a),
          pwem_bipartition(moved, designated, ReducedFunction::lin_sq, a));
    track(pwem_negativity(DensityMatrix(psi), designated, a), pwem_negativity(DensityMatrix(moved), designated, a));
  }
  if (designated.size() == 2) {
    track(geometric_pwem(psi, designated, geo).value, geometric_pwem(moved, designated, geo).value);
    const PartySet pair = make_party_set(designated);
    track(e_ext(partial_trace(psi, pair)), e_ext(partial_trace(moved, pair)));
  }
  return dev;
}

}  // namespace

std::vector<ReportRow> check_invariants(std::uint64_t seed) {
  std::vector<ReportRow> rows;
  const std::string cfg = "seed=" + std::to_string(seed);

  double lu = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(seed, 1000 + static_cast<std::uint64_t>(i));
    const std::uint64_t s = rng.next_u64();
    if (i % 4 == 3) {
      const RegisterShape shape({2, 2, 3, 2});
      lu = std::max(lu, max_lu_deviation(random_pure(shape, s), {0, 1, 3}, rng));
    } else if (i % 4 == 2) {
      const RegisterShape shape({2, 2, 2});
      lu = std::max(lu, max_lu_deviation(random_product(shape, {{0, 2}, {1}}, s), {0, 1}, rng));
    } else {
      lu = std::max(lu, max_lu_deviation(random_pure(RegisterShape({2, 2, 2}), s), {0, 1}, rng));
    }
  }
  rows.push_back(make_row("local-unitary invariance (100 states)", cfg, lu, 0.0, 1e-8));

  double recon = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RegisterShape shape(i % 2 ? std::vector<int>{2, 3} : std::vector<int>{2, 2, 2});
    const auto rho = random_mixed(shape, 1 + i % 4, seed + static_cast<std::uint64_t>(i));
    const auto pur = canonical_purification(rho);
    recon = std::max(recon, (partial_trace(pur.state, shape.all_parties()).mat() - rho.mat()).norm());
  }
  rows.push_back(make_row("purification marginal reconstruction", cfg, recon, 0.0, 1e-8));

  double schmidt = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RegisterShape shape({2, 3, 2, 2});
    const auto psi = random_pure(shape, seed + 500 + static_cast<std::uint64_t>(i));
    for (unsigned mask = 1; mask + 1 < (1u << 4); ++mask) {
      PartySet x;
      for (int p = 0; p < 4; ++p)
        if (mask & (1u << p)) x.push_back(p);
      auto a = hermitian_eig(partial_trace(psi, x).mat()).eigvals;
      auto b = hermitian_eig(partial_trace(psi, shape.complement(x)).mat()).eigvals;
      const auto n = std::min(a.size(), b.size());
      for (std::size_t j = 0; j < std::max(a.size(), b.size()); ++j) {
        const double va = j < a.size() ? a[j] : 0.0, vb = j < b.size() ? b[j] : 0.0;
        if (j < n || std::max(va, vb) > 1e-8) schmidt = std::max(schmidt, std::abs(va - vb));
      }
    }
  }
  rows.push_back(make_row("Schmidt spectrum symmetry", cfg, schmidt, 0.0, 1e-8));

  double involution = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RegisterShape shape({2, 3, 2});
    const auto rho = random_mixed(shape, 3, seed + 900 + static_cast<std::uint64_t>(i));
    const PartySet s = i % 2 ? PartySet{1} : PartySet{0, 2};
    const auto once = make_unchecked(shape, partial_transpose(rho, s));
    involution = std::max(involution, (partial_transpose(once, s) - rho.mat()).norm());
  }
  rows.push_back(make_row("partial transpose involution", cfg, involution, 0.0, 0.0));
  return rows;
}

std::vector<ReportRow> check_oracle(std::uint64_t seed) {
  int factor_mismatch = 0, separability_mismatch = 0;
  constexpr int kConstructions = 500;
  for (int c = 0; c < kConstructions; ++c) {
    Rng rng(seed, 7000 + static_cast<std::uint64_t>(c));
    const int n = 2 + static_cast<int>(rng.below(3));
    std::vector<int> dims;
    for (int p = 0; p < n; ++p) dims.push_back(2 + static_cast<int>(rng.below(2)));
    const RegisterShape shape(dims);

    std::map<std::size_t, PartySet> by_label;
    for (int p = 0; p < n; ++p) by_label[rng.below(static_cast<std::size_t>(n))].push_back(p);
    std::vector<PartySet> blocks;
    for (auto& [label, set] : by_label) blocks.push_back(set);
    std::sort(blocks.begin(), blocks.end());

    const auto psi = random_product(shape, blocks, rng.next_u64());
    if (finest_factorization(psi).party_sets() != blocks) ++factor_mismatch;

    const int k = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(n - 1)));
    std::vector<int> all = shape.all_parties();
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
    const std::vector<int> designated(all.begin(), all.begin() + k);

    bool brute = false;
    for (const auto& part : enumerate_admissible_partitions(shape, designated)) {
      bool product = true;
      for (const auto& b : part.blocks)
        if (linear_entropy(partial_trace(psi, b)) >= kFactorTolerance) product = false;
      if (product) {
        brute = true;
        break;
      }
    }
    if (is_kpw_separable_pure(psi, designated).separable != brute) ++separability_mismatch;
  }
  const std::string cfg = "seed=" + std::to_string(seed) + ",constructions=" + std::to_string(kConstructions);
  return {
      make_row("factorization vs construction", cfg, factor_mismatch, 0.0, 0.0),
      make_row("k-PW separability vs brute force", cfg, separability_mismatch, 0.0, 0.0),
  };
}

}  // namespace pwent
