#ifndef PWENT_STATES_HPP_
#define PWENT_STATES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pwent/tensor_core.hpp"

namespace pwent {

/// A split of the register into blocks, each seeded by one designated party.
/// blocks[i] contains designated[i]; blocks are disjoint and, for admissible
/// partitions, cover every party.
struct PartitionSpec {
  RegisterShape shape;
  std::vector<PartySet> blocks;
  std::vector<int> designated;

  std::string to_string() const;  // e.g. "AC|B"
};

/// Throws std::invalid_argument unless `designated` holds 2..n distinct valid
/// parties.
void validate_designated(const RegisterShape& shape, const std::vector<int>& designated);

PureState make_ghz(int parties, int dim);
PureState make_w(int parties);
PureState make_bell();
/// Five-qubit absolutely maximally entangled state with eight signed terms.
PureState make_ame5();

/// p|phi><phi| + (1-p) I/4 with |phi> = sqrt(t)|00> + sqrt(1-t)|11>.
DensityMatrix fig1_state(double p, double t);
/// p|Phi+><Phi+| + (1-p)|+><+| (x) |0><0|.
DensityMatrix fig2a_state(double p);
/// p|Phi+><Phi+| + (1-p) I/4.
DensityMatrix fig2b_state(double p);

enum class StateFamily { ghz, w, bell, ame5, fig1, fig2a, fig2b };

struct StateFamilyPoint {
  StateFamily family = StateFamily::ghz;
  double p = 0.0;
  double t = 0.0;
};

StateFamily parse_state_family(const std::string& name);
std::string family_name(StateFamily family);

/// Every admissible k-partition: undesignated parties are distributed over
/// the k blocks seeded by the designated parties. Ordering: the assignment of
/// the undesignated parties, read in ascending party order, counts up in base
/// k with the first undesignated party as the most significant digit.
std::vector<PartitionSpec> enumerate_admissible_partitions(const RegisterShape& shape,
                                                           const std::vector<int>& designated);
std::vector<PartitionSpec> enumerate_admissible_partitions(const RegisterShape& shape,
                                                           const std::vector<int>& designated, int k);

/// Normalized complex-Gaussian amplitudes.
PureState random_pure(const RegisterShape& shape, std::uint64_t seed);
/// Tensor product of independent random block states over `blocks`.
PureState random_product(const RegisterShape& shape, const std::vector<PartySet>& blocks,
                         std::uint64_t seed);
PureState random_product(const PartitionSpec& partition, std::uint64_t seed);
/// G G^dagger / tr with G a D x rank complex Gaussian matrix.
DensityMatrix random_mixed(const RegisterShape& shape, int rank, std::uint64_t seed);

}  // namespace pwent

#endif  // PWENT_STATES_HPP_
