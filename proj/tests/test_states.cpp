#include <set>

#include "doctest.h"
#include "pwent/random.hpp"
#include "pwent/states.hpp"

using namespace pwent;

namespace {

bool nonzero_spectrum_flat(const DensityMatrix& rho, double level) {
  for (double v : hermitian_eig(rho.mat()).eigvals)
    if (v > 1e-10 && std::abs(v - level) > 1e-10) return false;
  return true;
}

CMatrix bell_projector() { return DensityMatrix(make_bell()).mat(); }

}  // namespace

TEST_CASE("GHZ constructor") {
  const auto g = make_ghz(3, 2);
  CHECK(std::abs(g.amp()(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(g.amp()(7) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(g.amp().norm() == doctest::Approx(1.0));
  CHECK((make_ghz(2, 2).amp() - make_bell().amp()).norm() < 1e-15);
  const auto g43 = make_ghz(4, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const auto m = partial_trace(g43, {a, b}).mat();
      CHECK((m - CMatrix(m.diagonal().asDiagonal())).norm() < 1e-14);
    }
  // Every strict-subset marginal is flat on its support.
  for (unsigned mask = 1; mask < 15; ++mask) {
    PartySet keep;
    for (int p = 0; p < 4; ++p)
      if (mask & (1u << p)) keep.push_back(p);
    CHECK(nonzero_spectrum_flat(partial_trace(g43, keep), 1.0 / 3));
  }
  CHECK_THROWS_AS(make_ghz(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_ghz(3, 1), std::invalid_argument);
}

TEST_CASE("W constructor") {
  const auto w = make_w(3);
  for (int i : {1, 2, 4}) CHECK(std::abs(w.amp()(i) - 1 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(w.amp()(0)) == 0.0);
  const auto m = partial_trace(w, {0}).mat();
  CHECK(std::abs(m(0, 0) - 2.0 / 3) < 1e-14);
  CHECK(std::abs(m(1, 1) - 1.0 / 3) < 1e-14);
  const auto w2 = make_w(2);
  CHECK(std::abs(w2.amp()(1) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(w2.amp()(2) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(make_w(1), std::invalid_argument);
}

TEST_CASE("AME5 marginals") {
  const auto phi = make_ame5();
  CHECK(phi.amp().norm() == doctest::Approx(1.0));
  for (int a = 0; a < 5; ++a) {
    CHECK((partial_trace(phi, {a}).mat() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-14);
    for (int b = a + 1; b < 5; ++b)
      CHECK((partial_trace(phi, {a, b}).mat() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-14);
  }
}

TEST_CASE("figure families") {
  CHECK((fig1_state(0, 0.3).mat() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-14);
  CHECK((fig1_state(1, 0.5).mat() - bell_projector()).norm() < 1e-14);
  CMatrix zz = CMatrix::Zero(4, 4);
  zz(0, 0) = 1.0;
  CHECK((fig1_state(1, 1).mat() - zz).norm() < 1e-14);
  CHECK((fig2a_state(1).mat() - bell_projector()).norm() < 1e-14);
  CHECK((fig2b_state(1).mat() - bell_projector()).norm() < 1e-14);
  CHECK((fig2b_state(0).mat() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-14);
  // fig2a noise: |+><+| (x) |0><0|.
  CMatrix sigma = CMatrix::Zero(4, 4);
  sigma(0, 0) = sigma(0, 2) = sigma(2, 0) = sigma(2, 2) = 0.5;
  CHECK((fig2a_state(0).mat() - sigma).norm() < 1e-14);
  CHECK_THROWS_AS(fig1_state(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(fig1_state(0.5, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(fig2a_state(1.5), std::invalid_argument);
  CHECK_THROWS_AS(fig2b_state(-1), std::invalid_argument);
}

TEST_CASE("family names round-trip") {
  for (auto f : {StateFamily::ghz, StateFamily::w, StateFamily::bell, StateFamily::ame5, StateFamily::fig1,
                 StateFamily::fig2a, StateFamily::fig2b})
    CHECK(parse_state_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_state_family("cluster"), std::invalid_argument);
}

TEST_CASE("admissible partition enumeration") {
  const auto abc = enumerate_admissible_partitions(RegisterShape({2, 2, 2}), {0, 1}, 2);
  REQUIRE(abc.size() == 2);
  std::set<std::string> names;
  for (const auto& p : abc) names.insert(p.to_string());
  CHECK(names == std::set<std::string>{"A|BC", "AC|B"});
  CHECK(enumerate_admissible_partitions(RegisterShape({2, 2, 2, 2}), {0, 1}, 2).size() == 4);
  const auto ab = enumerate_admissible_partitions(RegisterShape({2, 2}), {0, 1}, 2);
  REQUIRE(ab.size() == 1);
  CHECK(ab[0].to_string() == "A|B");
  CHECK_THROWS_AS(enumerate_admissible_partitions(RegisterShape({2, 2, 2}), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_admissible_partitions(RegisterShape({2, 2, 2}), {0, 3}), std::invalid_argument);

  // Count k^(n-k); every partition covers all parties, one designated per block.
  for (int n = 2; n <= 6; ++n)
    for (int k = 2; k <= n; ++k) {
      std::vector<int> designated;
      for (int i = 0; i < k; ++i) designated.push_back(n - 1 - i);
      const auto parts = enumerate_admissible_partitions(RegisterShape(std::vector<int>(static_cast<std::size_t>(n), 2)), designated);
      std::size_t expected = 1;
      for (int i = 0; i < n - k; ++i) expected *= static_cast<std::size_t>(k);
      CHECK(parts.size() == expected);
      std::set<std::string> seen;
      for (const auto& p : parts) {
        seen.insert(p.to_string());
        REQUIRE(p.blocks.size() == static_cast<std::size_t>(k));
        int covered = 0;
        for (const auto& b : p.blocks) {
          covered += static_cast<int>(b.size());
          int held = 0;
          for (int d : designated) held += std::binary_search(b.begin(), b.end(), d) ? 1 : 0;
          CHECK(held == 1);
        }
        CHECK(covered == n);
      }
      CHECK(seen.size() == parts.size());
    }
}

TEST_CASE("random states are normalized and deterministic") {
  const RegisterShape s({2, 3, 2});
  const auto a = random_pure(s, 17), b = random_pure(s, 17), c = random_pure(s, 18);
  CHECK(a.amp().norm() == doctest::Approx(1.0));
  CHECK(a.amp() == b.amp());
  CHECK((a.amp() - c.amp()).norm() > 1e-3);

  const std::vector<PartySet> blocks{{0, 2}, {1}};
  const auto prod = random_product(s, blocks, 5);
  CHECK(prod.amp().norm() == doctest::Approx(1.0));
  CHECK(linear_entropy(partial_trace(prod, {1})) < 1e-12);
  CHECK(linear_entropy(partial_trace(prod, {0})) > 1e-6);  // the {0,2} block is entangled
  CHECK(random_product(s, blocks, 5).amp() == prod.amp());

  const auto rho = random_mixed(s, 3, 4);
  CHECK(numerical_rank(rho) == 3);
  CHECK(rho.mat() == random_mixed(s, 3, 4).mat());
  CHECK_THROWS_AS(random_mixed(s, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_mixed(s, 13, 1), std::invalid_argument);
}

TEST_CASE("rng streams") {
  Rng a(1, 0), b(1, 0), c(1, 1);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());
  Rng u(9);
  double lo = 1, hi = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    CHECK(u.below(5) < 5);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  const CMatrix q = random_unitary(5, u);
  CHECK((q.adjoint() * q - CMatrix::Identity(5, 5)).norm() < 1e-12);
}
