#include "pwent/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pwent {

namespace {

// For every full basis index, the index within the kept subsystem and within
// the rest, both in restricted mixed-radix order.
struct IndexSplit {
  std::size_t keep_dim = 1;
  std::size_t rest_dim = 1;
  std::vector<std::size_t> full;  // full[a * rest_dim + t]
};

IndexSplit split_indices(const RegisterShape& shape, const PartySet& keep) {
  IndexSplit s;
  const int n = shape.parties();
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int p : keep) kept[static_cast<std::size_t>(p)] = true;
  for (int p = 0; p < n; ++p) {
    if (kept[static_cast<std::size_t>(p)])
      s.keep_dim *= static_cast<std::size_t>(shape.dim(p));
    else
      s.rest_dim *= static_cast<std::size_t>(shape.dim(p));
  }
  s.full.assign(shape.total(), 0);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < shape.total(); ++i) {
    std::size_t a = 0, t = 0;
    for (int p = 0; p < n; ++p) {
      const auto d = static_cast<std::size_t>(shape.dim(p));
      if (kept[static_cast<std::size_t>(p)])
        a = a * d + static_cast<std::size_t>(digits[static_cast<std::size_t>(p)]);
      else
        t = t * d + static_cast<std::size_t>(digits[static_cast<std::size_t>(p)]);
    }
    s.full[a * s.rest_dim + t] = i;
    for (int p = n - 1; p >= 0; --p) {
      auto& dg = digits[static_cast<std::size_t>(p)];
      if (++dg < shape.dim(p)) break;
      dg = 0;
    }
  }
  return s;
}

void check_party_set(const RegisterShape& shape, const PartySet& set, const char* what) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] < 0 || set[i] >= shape.parties())
      throw std::invalid_argument(std::string(what) + ": party index out of range");
    if (i > 0 && set[i] <= set[i - 1])
      throw std::invalid_argument(std::string(what) + ": party set must be sorted and distinct");
  }
}

// Applies the tensor product of per-party unitaries to every column of `m`.
CMatrix apply_local_columns(const RegisterShape& shape, const CMatrix& m,
                            std::span<const CMatrix> unitaries) {
  CMatrix out = m;
  std::size_t stride = shape.total();
  for (int p = 0; p < shape.parties(); ++p) {
    const auto d = static_cast<std::size_t>(shape.dim(p));
    stride /= d;
    const CMatrix& u = unitaries[static_cast<std::size_t>(p)];
    if (static_cast<std::size_t>(u.rows()) != d || static_cast<std::size_t>(u.cols()) != d)
      throw std::invalid_argument("apply_local: unitary size does not match party dimension");
    const std::size_t block = stride * d;
    CVector tmp(static_cast<Eigen::Index>(d));
    for (Eigen::Index col = 0; col < out.cols(); ++col) {
      for (std::size_t base = 0; base < shape.total(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          for (std::size_t r = 0; r < d; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < d; ++c)
              acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
                     out(static_cast<Eigen::Index>(base + c * stride + off), col);
            tmp(static_cast<Eigen::Index>(r)) = acc;
          }
          for (std::size_t r = 0; r < d; ++r)
            out(static_cast<Eigen::Index>(base + r * stride + off), col) =
                tmp(static_cast<Eigen::Index>(r));
        }
      }
    }
  }
  return out;
}

}  // namespace

// --- RegisterShape ---------------------------------------------------------

RegisterShape::RegisterShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("RegisterShape: at least one party required");
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("RegisterShape: local dimensions must be positive");
    total_ *= static_cast<std::size_t>(d);
  }
}

std::size_t RegisterShape::subsystem_dim(const PartySet& parties) const {
  std::size_t d = 1;
  for (int p : parties) d *= static_cast<std::size_t>(dim(p));
  return d;
}

RegisterShape RegisterShape::restrict_to(const PartySet& parties) const {
  std::vector<int> d;
  d.reserve(parties.size());
  for (int p : parties) d.push_back(dim(p));
  return RegisterShape(std::move(d));
}

RegisterShape RegisterShape::append(int d) const {
  auto dims = dims_;
  dims.push_back(d);
  return RegisterShape(std::move(dims));
}

std::vector<int> RegisterShape::digits(std::size_t index) const {
  std::vector<int> out(dims_.size(), 0);
  for (std::size_t p = dims_.size(); p-- > 0;) {
    const auto d = static_cast<std::size_t>(dims_[p]);
    out[p] = static_cast<int>(index % d);
    index /= d;
  }
  return out;
}

std::size_t RegisterShape::index(std::span<const int> digits) const {
  if (digits.size() != dims_.size()) throw std::invalid_argument("RegisterShape::index: digit count");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (digits[p] < 0 || digits[p] >= dims_[p])
      throw std::invalid_argument("RegisterShape::index: digit out of range");
    idx = idx * static_cast<std::size_t>(dims_[p]) + static_cast<std::size_t>(digits[p]);
  }
  return idx;
}

PartySet RegisterShape::all_parties() const {
  PartySet all(dims_.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

PartySet RegisterShape::complement(const PartySet& parties) const {
  return set_difference(all_parties(), parties);
}

std::string RegisterShape::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims_[i]);
  }
  return s + ")";
}

// --- States ----------------------------------------------------------------

PureState::PureState(RegisterShape shape, CVector amp, double tol_norm)
    : shape_(std::move(shape)), amp_(std::move(amp)) {
  if (static_cast<std::size_t>(amp_.size()) != shape_.total())
    throw std::invalid_argument("PureState: amplitude count does not match shape");
  if (std::abs(amp_.norm() - 1.0) > tol_norm)
    throw std::invalid_argument("PureState: amplitude vector is not normalized");
}

PureState PureState::normalized(RegisterShape shape, CVector amp) {
  const double nrm = amp.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::invalid_argument("PureState: zero or non-finite vector");
  return PureState(std::move(shape), amp / nrm);
}

DensityMatrix::DensityMatrix(RegisterShape shape, CMatrix mat, const Tolerances& tol)
    : shape_(std::move(shape)), mat_(std::move(mat)) {
  const auto n = static_cast<Eigen::Index>(shape_.total());
  if (mat_.rows() != n || mat_.cols() != n)
    throw std::invalid_argument("DensityMatrix: matrix side does not match shape");
  if (n > 0 && (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(mat_.trace() - cplx(1.0, 0.0)) > tol.norm)
    throw std::invalid_argument("DensityMatrix: trace is not one");
  const auto spec = hermitian_eig(mat_, tol.herm);
  if (spec.eigvals.back() < -tol.psd)
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : shape_(psi.shape()), mat_(psi.amp() * psi.amp().adjoint()) {}

DensityMatrix make_unchecked(RegisterShape shape, CMatrix mat) {
  return DensityMatrix(DensityMatrix::Unchecked{}, std::move(shape), std::move(mat));
}

// --- Products and reductions ----------------------------------------------

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const PartySet& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  check_party_set(rho.shape(), keep, "partial_trace");
  if (static_cast<int>(keep.size()) == rho.parties()) return rho;
  const auto s = split_indices(rho.shape(), keep);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(s.keep_dim), static_cast<Eigen::Index>(s.keep_dim));
  const CMatrix& m = rho.mat();
  for (std::size_t a = 0; a < s.keep_dim; ++a)
    for (std::size_t b = 0; b < s.keep_dim; ++b) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < s.rest_dim; ++t)
        acc += m(static_cast<Eigen::Index>(s.full[a * s.rest_dim + t]),
                 static_cast<Eigen::Index>(s.full[b * s.rest_dim + t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return make_unchecked(rho.shape().restrict_to(keep), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, const PartySet& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  check_party_set(psi.shape(), keep, "partial_trace");
  const auto s = split_indices(psi.shape(), keep);
  CMatrix m(static_cast<Eigen::Index>(s.keep_dim), static_cast<Eigen::Index>(s.rest_dim));
  for (std::size_t a = 0; a < s.keep_dim; ++a)
    for (std::size_t t = 0; t < s.rest_dim; ++t)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          psi.amp()(static_cast<Eigen::Index>(s.full[a * s.rest_dim + t]));
  return make_unchecked(psi.shape().restrict_to(keep), m * m.adjoint());
}

CMatrix partial_transpose(const DensityMatrix& rho, const PartySet& subset) {
  check_party_set(rho.shape(), subset, "partial_transpose");
  if (subset.empty() || static_cast<int>(subset.size()) == rho.parties())
    throw std::invalid_argument("partial_transpose: subset must be a nonempty proper subset");
  const auto& shape = rho.shape();
  const std::size_t dim = shape.total();
  std::vector<std::vector<int>> digits(dim);
  for (std::size_t i = 0; i < dim; ++i) digits[i] = shape.digits(i);
  CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> r, c;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      r = digits[i];
      c = digits[j];
      for (int p : subset) std::swap(r[static_cast<std::size_t>(p)], c[static_cast<std::size_t>(p)]);
      out(static_cast<Eigen::Index>(shape.index(r)), static_cast<Eigen::Index>(shape.index(c))) =
          rho.mat()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  return out;
}

// --- Spectral routines -----------------------------------------------------

SpectralDecomposition hermitian_eig(const CMatrix& m, double tol_herm) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return {};
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol_herm)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

  CMatrix a = 0.5 * (m + m.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double threshold = 1e-12 * std::max(1.0, a.norm());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    if (std::sqrt(off) < threshold) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g < std::numeric_limits<double>::min()) continue;
        const cplx phase_conj = std::conj(apq) / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotation G = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
        // Written with real scalings plus one explicit phase product, which
        // keeps the compiler off the slow checked complex multiply.
        const double fr = phase_conj.real(), fi = phase_conj.imag();
        auto rotate_cols = [&](CMatrix& x) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const cplx xp = x(k, p), xq = x(k, q);
            const cplx t(xq.real() * fr - xq.imag() * fi, xq.real() * fi + xq.imag() * fr);
            x(k, p) = c * xp - s * t;
            x(k, q) = s * xp + c * t;
          }
        };
        rotate_cols(a);
        rotate_cols(v);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx rp = a(p, k), rq = a(q, k);
          const cplx t(rq.real() * fr + rq.imag() * fi, rq.imag() * fr - rq.real() * fi);  // conj(phase) * rq
          a(p, k) = c * rp - s * t;
          a(q, k) = s * rp + c * t;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  struct Pair {
    double value;
    CVector vec;
    Eigen::Index lead;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector col = v.col(j);
    col.normalize();
    Eigen::Index lead = 0;
    const double big = col.cwiseAbs().maxCoeff();
    while (lead < n && std::abs(col(lead)) <= 1e-8 * big) ++lead;
    const cplx c = col(lead);
    col *= std::conj(c) / std::abs(c);
    col(lead) = std::abs(col(lead));
    pairs.push_back({a(j, j).real(), std::move(col), lead});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.value > y.value; });

  auto tie_less = [n](const Pair& x, const Pair& y) {
    if (x.lead != y.lead) return x.lead < y.lead;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x.vec(i).real() != y.vec(i).real()) return x.vec(i).real() > y.vec(i).real();
      if (x.vec(i).imag() != y.vec(i).imag()) return x.vec(i).imag() > y.vec(i).imag();
    }
    return false;
  };
  for (std::size_t start = 0; start < pairs.size();) {
    std::size_t end = start + 1;
    while (end < pairs.size() && pairs[start].value - pairs[end].value <= 1e-10) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start),
                     pairs.begin() + static_cast<std::ptrdiff_t>(end), tie_less);
    start = end;
  }

  SpectralDecomposition out;
  out.eigvals.reserve(static_cast<std::size_t>(n));
  out.eigvecs.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigvals.push_back(pairs[static_cast<std::size_t>(j)].value);
    out.eigvecs.col(j) = pairs[static_cast<std::size_t>(j)].vec;
  }
  return out;
}

double trace_norm(const CMatrix& m) {
  double sum = 0.0;
  for (double ev : hermitian_eig(m).eigvals) sum += std::abs(ev);
  return sum;
}

double purity(const DensityMatrix& rho) {
  // Divide by tr^2 so roundoff in the trace does not leak into S_L.
  const double tr = rho.mat().trace().real();
  return rho.mat().squaredNorm() / (tr * tr);
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double ev : hermitian_eig(rho.mat()).eigvals)
    if (ev > kZeroEigenvalue) s -= ev * std::log2(ev);
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.shape() == sigma.shape())) throw std::invalid_argument("relative_entropy: shape mismatch");
  const auto sig = hermitian_eig(sigma.mat());
  double cross = 0.0;
  for (std::size_t k = 0; k < sig.eigvals.size(); ++k) {
    const auto col = sig.eigvecs.col(static_cast<Eigen::Index>(k));
    const double weight = (col.adjoint() * rho.mat() * col)(0, 0).real();
    if (sig.eigvals[k] <= kZeroEigenvalue) {
      if (weight > 1e-10) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(sig.eigvals[k]);
  }
  const double value = -von_neumann_entropy(rho) - cross;
  return std::max(0.0, value);
}

double overlap(const PureState& psi, const PureState& phi) {
  if (!(psi.shape() == phi.shape())) throw std::invalid_argument("overlap: shape mismatch");
  return std::norm(psi.amp().dot(phi.amp()));
}

int numerical_rank(const DensityMatrix& rho) {
  int r = 0;
  for (double ev : hermitian_eig(rho.mat()).eigvals)
    if (ev > kZeroEigenvalue) ++r;
  return r;
}

// --- Embedding and local maps ---------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> block_indices(const RegisterShape& shape,
                                                    std::span<const PartySet> blocks) {
  std::vector<int> owner(static_cast<std::size_t>(shape.parties()), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int p : blocks[b]) {
      if (p < 0 || p >= shape.parties() || owner[static_cast<std::size_t>(p)] != -1)
        throw std::invalid_argument("embed_product: blocks must be disjoint party subsets");
      owner[static_cast<std::size_t>(p)] = static_cast<int>(b);
    }
  for (int o : owner)
    if (o < 0) throw std::invalid_argument("embed_product: blocks must cover every party");
  std::vector<std::vector<std::size_t>> idx(blocks.size(), std::vector<std::size_t>(shape.total(), 0));
  for (std::size_t i = 0; i < shape.total(); ++i) {
    const auto dg = shape.digits(i);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t sub = 0;
      for (int p : blocks[b])
        sub = sub * static_cast<std::size_t>(shape.dim(p)) + static_cast<std::size_t>(dg[static_cast<std::size_t>(p)]);
      idx[b][i] = sub;
    }
  }
  return idx;
}

}  // namespace

CVector embed_product(const RegisterShape& shape, std::span<const PartySet> blocks,
                      std::span<const CVector> block_amps) {
  if (blocks.size() != block_amps.size()) throw std::invalid_argument("embed_product: block count mismatch");
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (static_cast<std::size_t>(block_amps[b].size()) != shape.subsystem_dim(blocks[b]))
      throw std::invalid_argument("embed_product: block amplitude size mismatch");
  const auto idx = block_indices(shape, blocks);
  CVector out(static_cast<Eigen::Index>(shape.total()));
  for (std::size_t i = 0; i < shape.total(); ++i) {
    cplx v = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) v *= block_amps[b](static_cast<Eigen::Index>(idx[b][i]));
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

CMatrix embed_product(const RegisterShape& shape, std::span<const PartySet> blocks,
                      std::span<const CMatrix> block_mats) {
  if (blocks.size() != block_mats.size()) throw std::invalid_argument("embed_product: block count mismatch");
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (static_cast<std::size_t>(block_mats[b].rows()) != shape.subsystem_dim(blocks[b]))
      throw std::invalid_argument("embed_product: block matrix size mismatch");
  const auto idx = block_indices(shape, blocks);
  const auto dim = static_cast<Eigen::Index>(shape.total());
  CMatrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      cplx v = 1.0;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        v *= block_mats[b](static_cast<Eigen::Index>(idx[b][static_cast<std::size_t>(i)]),
                           static_cast<Eigen::Index>(idx[b][static_cast<std::size_t>(j)]));
      out(i, j) = v;
    }
  return out;
}

PureState apply_local(const PureState& psi, std::span<const CMatrix> unitaries) {
  if (static_cast<int>(unitaries.size()) != psi.parties())
    throw std::invalid_argument("apply_local: need one unitary per party");
  CVector out = apply_local_columns(psi.shape(), psi.amp(), unitaries);
  return PureState::normalized(psi.shape(), std::move(out));
}

DensityMatrix apply_local(const DensityMatrix& rho, std::span<const CMatrix> unitaries) {
  if (static_cast<int>(unitaries.size()) != rho.parties())
    throw std::invalid_argument("apply_local: need one unitary per party");
  const CMatrix half = apply_local_columns(rho.shape(), rho.mat(), unitaries);
  const CMatrix full = apply_local_columns(rho.shape(), CMatrix(half.adjoint()), unitaries);
  return make_unchecked(rho.shape(), full.adjoint());
}

// --- Party sets ------------------------------------------------------------

PartySet make_party_set(std::vector<int> parties) {
  std::sort(parties.begin(), parties.end());
  if (std::adjacent_find(parties.begin(), parties.end()) != parties.end())
    throw std::invalid_argument("party set contains duplicates");
  return parties;
}

bool is_subset(const PartySet& inner, const PartySet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

PartySet set_union(const PartySet& a, const PartySet& b) {
  PartySet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PartySet set_difference(const PartySet& a, const PartySet& b) {
  PartySet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string party_label(int party) {
  if (party >= 0 && party < 26) return std::string(1, static_cast<char>('A' + party));
  return "P" + std::to_string(party);
}

std::string party_set_label(const PartySet& parties) {
  std::string s;
  for (int p : parties) s += party_label(p);
  return s.empty() ? "-" : s;
}

}  // namespace pwent
