#include "doctest.h"
#include "oracles.hpp"
#include "pwent/random.hpp"
#include "pwent/separability.hpp"
#include "pwent/states.hpp"

using namespace pwent;

namespace {

PureState ket0(int dim = 2) {
  CVector v = CVector::Zero(dim);
  v(0) = 1.0;
  return PureState(RegisterShape({dim}), v);
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.shape().dims();
  for (int d : b.shape().dims()) dims.push_back(d);
  return PureState(RegisterShape(dims), kron(a.amp(), b.amp()));
}

// |psi>^{AX} |psi>^{YC}, parties ordered A, X, Y, C.
PureState two_pairs() { return tensor(make_bell(), make_bell()); }

}  // namespace

TEST_CASE("finest factorization examples") {
  auto f = finest_factorization(make_ghz(3, 2));
  CHECK(f.party_sets() == std::vector<PartySet>{{0, 1, 2}});
  f = finest_factorization(tensor(make_bell(), ket0()));
  CHECK(f.party_sets() == std::vector<PartySet>{{0, 1}, {2}});
  CHECK(finest_factorization(make_w(3)).factors.size() == 1);
  const auto sep = finest_factorization(tensor(tensor(ket0(), make_bell()), ket0(3)));
  CHECK(sep.party_sets() == std::vector<PartySet>{{0}, {1, 2}, {3}});
  CHECK(sep.factor_of(2) == 1);
}

TEST_CASE("reconstruction, idempotence, phase robustness") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RegisterShape s({2, 3, 2, 2});
    const std::vector<PartySet> blocks = seed % 2 ? std::vector<PartySet>{{0, 3}, {1}, {2}}
                                                  : std::vector<PartySet>{{0}, {1, 2, 3}};
    const auto psi = random_product(s, blocks, seed);
    const auto f = finest_factorization(psi);
    CHECK(f.party_sets() == blocks);
    CHECK((reconstruct(f, s).amp() - psi.amp()).norm() < 1e-10);
    for (const auto& factor : f.factors) CHECK(finest_factorization(factor.state).factors.size() == 1);
    const PureState rotated(s, psi.amp() * std::polar(1.0, 0.3 + static_cast<double>(seed)));
    CHECK(finest_factorization(rotated).party_sets() == blocks);
  }
}

TEST_CASE("finest factorization matches brute force") {
  Rng rng(4242);
  int disagreements = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(2 + static_cast<int>(rng.below(2)));
    const auto parts = oracle::set_partitions(n);
    const auto blocks = parts[rng.below(parts.size())];
    std::vector<oracle::Vec> amps;
    for (const auto& b : blocks) {
      std::vector<int> bd;
      for (int p : b) bd.push_back(dims[static_cast<std::size_t>(p)]);
      amps.push_back(random_pure(RegisterShape(bd), rng.next_u64()).amp());
    }
    const PureState psi(RegisterShape(dims), oracle::product_state(dims, blocks, amps));
    const auto ours = finest_factorization(psi).party_sets();
    if (ours != blocks || oracle::finest_partition(psi.amp(), dims) != blocks) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("k-partitewise separability examples") {
  const auto ghz = is_kpw_separable_pure(make_ghz(3, 2), {0, 1});
  CHECK_FALSE(ghz.separable);
  CHECK_FALSE(ghz.witness.has_value());

  const auto pairs = is_kpw_separable_pure(two_pairs(), {0, 3});
  REQUIRE(pairs.separable);
  REQUIRE(pairs.witness.has_value());
  CHECK(pairs.witness->to_string() == "AB|CD");  // AX|YC in party labels A,B,C,D

  const auto prod = random_product(RegisterShape({2, 2, 2}), {{0}, {1}, {2}}, 3);
  CHECK(is_kpw_separable_pure(prod, {0, 1}).separable);
  CHECK_THROWS_AS(is_kpw_separable_pure(prod, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(is_kpw_separable_pure(prod, {0}), std::invalid_argument);
  CHECK_THROWS_AS(is_kpw_separable_pure(prod, {0, 5}), std::invalid_argument);
}

TEST_CASE("k-partitewise separability matches brute force and is LU invariant") {
  Rng rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(2));
    std::vector<int> dims(static_cast<std::size_t>(n), 2);
    const auto parts = oracle::set_partitions(n);
    const auto blocks = parts[rng.below(parts.size())];
    const auto psi = random_product(RegisterShape(dims), std::vector<PartySet>(blocks.begin(), blocks.end()), rng.next_u64());
    std::vector<int> designated{0, n - 1};
    if (trial % 3 == 0) designated = {0, 1, n - 1};
    const auto verdict = is_kpw_separable_pure(psi, designated);
    CHECK(verdict.separable == oracle::kpw_separable(psi.amp(), dims, designated));
    if (verdict.separable) {
      REQUIRE(verdict.witness.has_value());
      std::vector<std::vector<int>> wb(verdict.witness->blocks.begin(), verdict.witness->blocks.end());
      CHECK(oracle::splits_over(psi.amp(), dims, wb));
    }
    const auto us = random_local_unitaries(psi.shape(), rng);
    CHECK(is_kpw_separable_pure(apply_local(psi, us), designated).separable == verdict.separable);
  }
}

TEST_CASE("product-reduced test") {
  CHECK_FALSE(is_product_reduced(partial_trace(make_ghz(3, 2), {0, 1})));
  const auto a = random_mixed(RegisterShape({2}), 2, 1), b = random_mixed(RegisterShape({3}), 2, 2);
  CHECK(is_product_reduced(DensityMatrix(RegisterShape({2, 3}), kron(a.mat(), b.mat()))));
  CHECK(is_product_reduced(partial_trace(two_pairs(), {0, 3})));
}

TEST_CASE("mixed necessary checks") {
  const auto ghz = mixed_kpw_necessary_checks(DensityMatrix(make_ghz(3, 2)), {0, 1});
  CHECK(ghz.global_pure);
  CHECK_FALSE(ghz.product_reduced);
  CHECK(ghz.certified_entangled);
  CHECK(ghz.verdict() == "entangled");

  CMatrix diag = CMatrix::Zero(4, 4);
  diag(0, 0) = 0.5;
  diag(3, 3) = 0.5;
  const auto mix = mixed_kpw_necessary_checks(DensityMatrix(RegisterShape({2, 2}), diag), {0, 1});
  CHECK(mix.marginal_ppt_all_cuts);
  CHECK_FALSE(mix.certified_entangled);
  CHECK(mix.verdict() == "inconclusive");

  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const DensityMatrix bell_c(RegisterShape({2, 2, 2}), kron(fig2b_state(1).mat(), zero));
  const auto r = mixed_kpw_necessary_checks(bell_c, {0, 1});
  CHECK_FALSE(r.marginal_ppt_all_cuts);
  CHECK(r.certified_entangled);

  const CMatrix prod = kron(kron(random_mixed(RegisterShape({2}), 2, 1).mat(), random_mixed(RegisterShape({2}), 2, 2).mat()),
                            random_mixed(RegisterShape({2}), 2, 3).mat());
  const auto p = mixed_kpw_necessary_checks(DensityMatrix(RegisterShape({2, 2, 2}), prod), {0, 1});
  CHECK(p.product_reduced);
  CHECK(p.marginal_ppt_all_cuts);
  CHECK_FALSE(p.certified_entangled);
}
