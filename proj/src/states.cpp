#include "pwent/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwent/random.hpp"

namespace pwent {

namespace {

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector basis(int dim, int k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

std::string PartitionSpec::to_string() const {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += "|";
    s += party_set_label(blocks[b]);
  }
  return s;
}

void validate_designated(const RegisterShape& shape, const std::vector<int>& designated) {
  const int k = static_cast<int>(designated.size());
  if (k < 2) throw std::invalid_argument("designated set needs at least two parties");
  if (k > shape.parties()) throw std::invalid_argument("more designated parties than parties");
  auto sorted = designated;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("designated parties must be distinct");
  if (sorted.front() < 0 || sorted.back() >= shape.parties())
    throw std::invalid_argument("designated party index out of range");
}

PureState make_ghz(int parties, int dim) {
  if (parties < 2 || dim < 2) throw std::invalid_argument("make_ghz: need parties >= 2 and dim >= 2");
  RegisterShape shape(std::vector<int>(static_cast<std::size_t>(parties), dim));
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(shape.total()));
  for (int j = 0; j < dim; ++j) {
    std::vector<int> digits(static_cast<std::size_t>(parties), j);
    amp(static_cast<Eigen::Index>(shape.index(digits))) = 1.0 / std::sqrt(static_cast<double>(dim));
  }
  return PureState(shape, amp);
}

PureState make_w(int parties) {
  if (parties < 2) throw std::invalid_argument("make_w: need parties >= 2");
  RegisterShape shape(std::vector<int>(static_cast<std::size_t>(parties), 2));
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(shape.total()));
  for (int p = 0; p < parties; ++p)
    amp(Eigen::Index{1} << (parties - 1 - p)) = 1.0 / std::sqrt(static_cast<double>(parties));
  return PureState(shape, amp);
}

PureState make_bell() { return make_ghz(2, 2); }

PureState make_ame5() {
  // (sign, bit string) with the first qubit as the most significant bit.
  static constexpr struct {
    double sign;
    int bits;
  } terms[] = {{-1, 0b00000}, {+1, 0b01111}, {-1, 0b10011}, {+1, 0b11100},
               {+1, 0b00110}, {+1, 0b01001}, {+1, 0b10101}, {+1, 0b11010}};
  RegisterShape shape({2, 2, 2, 2, 2});
  CVector amp = CVector::Zero(32);
  for (const auto& t : terms) amp(t.bits) = t.sign / std::sqrt(8.0);
  return PureState(shape, amp);
}

DensityMatrix fig1_state(double p, double t) {
  check_unit(p, "p");
  check_unit(t, "t");
  CVector phi = CVector::Zero(4);
  phi(0) = std::sqrt(t);
  phi(3) = std::sqrt(1.0 - t);
  CMatrix m = p * projector(phi) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(RegisterShape({2, 2}), std::move(m));
}

DensityMatrix fig2a_state(double p) {
  check_unit(p, "p");
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const CMatrix sigma = kron(projector(plus), projector(basis(2, 0)));
  CMatrix m = p * projector(make_bell().amp()) + (1.0 - p) * sigma;
  return DensityMatrix(RegisterShape({2, 2}), std::move(m));
}

DensityMatrix fig2b_state(double p) {
  check_unit(p, "p");
  CMatrix m = p * projector(make_bell().amp()) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(RegisterShape({2, 2}), std::move(m));
}

StateFamily parse_state_family(const std::string& name) {
  if (name == "ghz") return StateFamily::ghz;
  if (name == "w") return StateFamily::w;
  if (name == "bell") return StateFamily::bell;
  if (name == "ame5") return StateFamily::ame5;
  if (name == "fig1") return StateFamily::fig1;
  if (name == "fig2a") return StateFamily::fig2a;
  if (name == "fig2b") return StateFamily::fig2b;
  throw std::invalid_argument("unknown state family '" + name + "'");
}

std::string family_name(StateFamily family) {
  switch (family) {
    case StateFamily::ghz: return "ghz";
    case StateFamily::w: return "w";
    case StateFamily::bell: return "bell";
    case StateFamily::ame5: return "ame5";
    case StateFamily::fig1: return "fig1";
    case StateFamily::fig2a: return "fig2a";
    case StateFamily::fig2b: return "fig2b";
  }
  return "?";
}

std::vector<PartitionSpec> enumerate_admissible_partitions(const RegisterShape& shape,
                                                           const std::vector<int>& designated) {
  validate_designated(shape, designated);
  const auto k = designated.size();
  const PartySet rest = set_difference(shape.all_parties(), make_party_set(designated));

  std::size_t count = 1;
  for (std::size_t i = 0; i < rest.size(); ++i) count *= k;

  std::vector<PartitionSpec> out;
  out.reserve(count);
  std::vector<std::size_t> assign(rest.size(), 0);
  for (std::size_t c = 0; c < count; ++c) {
    PartitionSpec spec{shape, {}, designated};
    spec.blocks.resize(k);
    for (std::size_t b = 0; b < k; ++b) spec.blocks[b].push_back(designated[b]);
    for (std::size_t i = 0; i < rest.size(); ++i) spec.blocks[assign[i]].push_back(rest[i]);
    for (auto& b : spec.blocks) std::sort(b.begin(), b.end());
    out.push_back(std::move(spec));
    for (std::size_t i = rest.size(); i-- > 0;) {
      if (++assign[i] < k) break;
      assign[i] = 0;
    }
  }
  return out;
}

std::vector<PartitionSpec> enumerate_admissible_partitions(const RegisterShape& shape,
                                                           const std::vector<int>& designated, int k) {
  if (k != static_cast<int>(designated.size()))
    throw std::invalid_argument("enumerate_admissible_partitions: k must equal the designated count");
  return enumerate_admissible_partitions(shape, designated);
}

PureState random_pure(const RegisterShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  CVector amp(static_cast<Eigen::Index>(shape.total()));
  for (Eigen::Index i = 0; i < amp.size(); ++i) amp(i) = rng.complex_normal();
  return PureState::normalized(shape, std::move(amp));
}

PureState random_product(const RegisterShape& shape, const std::vector<PartySet>& blocks,
                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CVector> amps;
  for (const auto& b : blocks) {
    CVector v(static_cast<Eigen::Index>(shape.subsystem_dim(b)));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    amps.push_back(v.normalized());
  }
  return PureState::normalized(shape, embed_product(shape, blocks, amps));
}

PureState random_product(const PartitionSpec& partition, std::uint64_t seed) {
  return random_product(partition.shape, partition.blocks, seed);
}

DensityMatrix random_mixed(const RegisterShape& shape, int rank, std::uint64_t seed) {
  if (rank < 1 || static_cast<std::size_t>(rank) > shape.total())
    throw std::invalid_argument("random_mixed: rank must lie in [1, total dimension]");
  Rng rng(seed);
  CMatrix g(static_cast<Eigen::Index>(shape.total()), rank);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(shape, 0.5 * (m + m.adjoint()));
}

}  // namespace pwent
