#ifndef PWENT_TENSOR_CORE_HPP_
#define PWENT_TENSOR_CORE_HPP_

// Dense complex linear algebra over multi-qudit registers.
//
// Basis convention: row-major mixed radix over party index 0..n-1, so party 0
// is the most significant digit. Functions that return reduced objects keep
// the original relative party order.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pwent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Sorted list of distinct party indices.
using PartySet = std::vector<int>;

struct Tolerances {
  double norm = 1e-9;
  double herm = 1e-9;
  double psd = 1e-9;
  double recon = 1e-8;
  double eig = 1e-8;
};

/// Eigenvalues below this are exact zeros in entropies and rank counts.
inline constexpr double kZeroEigenvalue = 1e-12;

class RegisterShape {
 public:
  RegisterShape() = default;
  // Local dimensions must be >= 1. Dimension-1 parties only arise as
  // ancillas of rank-one purifications; the state constructors require >= 2.
  explicit RegisterShape(std::vector<int> dims);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total() const { return total_; }

  /// Product of local dimensions over `parties`.
  std::size_t subsystem_dim(const PartySet& parties) const;
  RegisterShape restrict_to(const PartySet& parties) const;
  RegisterShape append(int dim) const;

  std::vector<int> digits(std::size_t index) const;
  std::size_t index(std::span<const int> digits) const;

  PartySet all_parties() const;
  PartySet complement(const PartySet& parties) const;

  std::string to_string() const;

  bool operator==(const RegisterShape&) const = default;

 private:
  std::vector<int> dims_;
  std::size_t total_ = 0;
};

class PureState {
 public:
  /// Throws std::invalid_argument if the size mismatches the shape or the
  /// norm is off by more than `tol_norm`.
  PureState(RegisterShape shape, CVector amp, double tol_norm = Tolerances{}.norm);

  /// Normalizes `amp` first; throws on a zero vector.
  static PureState normalized(RegisterShape shape, CVector amp);

  const RegisterShape& shape() const { return shape_; }
  const CVector& amp() const { return amp_; }
  int parties() const { return shape_.parties(); }

 private:
  RegisterShape shape_;
  CVector amp_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and positivity within `tol`.
  DensityMatrix(RegisterShape shape, CMatrix mat, const Tolerances& tol = {});
  explicit DensityMatrix(const PureState& psi);

  const RegisterShape& shape() const { return shape_; }
  const CMatrix& mat() const { return mat_; }
  int parties() const { return shape_.parties(); }

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, RegisterShape shape, CMatrix mat)
      : shape_(std::move(shape)), mat_(std::move(mat)) {}
  friend DensityMatrix make_unchecked(RegisterShape, CMatrix);

  RegisterShape shape_;
  CMatrix mat_;
};

/// Builds a density matrix without validation. Used internally for outputs
/// that are valid by construction (marginals, mixtures of valid states).
DensityMatrix make_unchecked(RegisterShape shape, CMatrix mat);

struct SpectralDecomposition {
  std::vector<double> eigvals;  // descending
  CMatrix eigvecs;              // column j pairs with eigvals[j]
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const PartySet& keep);
DensityMatrix partial_trace(const PureState& psi, const PartySet& keep);

/// Transposes the tensor factors in `subset`. Throws on an empty or full set.
CMatrix partial_transpose(const DensityMatrix& rho, const PartySet& subset);

/// Cyclic Jacobi diagonalization. Eigenvectors are phase-normalized so their
/// first significant component is real positive; degenerate eigenvalues are
/// ordered by that component's index, then lexicographically.
SpectralDecomposition hermitian_eig(const CMatrix& m, double tol_herm = Tolerances{}.herm);

double trace_norm(const CMatrix& m);
double purity(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho||sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double overlap(const PureState& psi, const PureState& phi);

/// Number of eigenvalues above kZeroEigenvalue.
int numerical_rank(const DensityMatrix& rho);

/// Tensor product of block states living on disjoint party subsets that
/// together cover `shape`. Block amplitudes use the restricted shape order.
CVector embed_product(const RegisterShape& shape, std::span<const PartySet> blocks,
                      std::span<const CVector> block_amps);
CMatrix embed_product(const RegisterShape& shape, std::span<const PartySet> blocks,
                      std::span<const CMatrix> block_mats);

/// Applies one unitary per party.
PureState apply_local(const PureState& psi, std::span<const CMatrix> unitaries);
DensityMatrix apply_local(const DensityMatrix& rho, std::span<const CMatrix> unitaries);

// Party-set helpers.
PartySet make_party_set(std::vector<int> parties);
bool is_subset(const PartySet& inner, const PartySet& outer);
PartySet set_union(const PartySet& a, const PartySet& b);
PartySet set_difference(const PartySet& a, const PartySet& b);
std::string party_label(int party);
std::string party_set_label(const PartySet& parties);

}  // namespace pwent

#endif  // PWENT_TENSOR_CORE_HPP_
