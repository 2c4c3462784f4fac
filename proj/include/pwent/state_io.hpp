#ifndef PWENT_STATE_IO_HPP_
#define PWENT_STATE_IO_HPP_

// Line-oriented state files:
//
//   # comment
//   dims: 2 2 2
//   kind: pure            (or: mixed)
//   re,im                 one amplitude per line for pure states
//   re,im re,im ...       one matrix row per line for mixed states
//
// Numbers are written with 17 significant digits so that save -> load -> save
// is byte-identical.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "pwent/tensor_core.hpp"

namespace pwent {

class StateFormatError : public std::runtime_error {
 public:
  StateFormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using AnyState = std::variant<PureState, DensityMatrix>;

void save_state(std::ostream& out, const AnyState& state);
AnyState load_state(std::istream& in);

void save_state_file(const std::string& path, const AnyState& state);
AnyState load_state_file(const std::string& path);

/// Density matrix of either alternative.
DensityMatrix as_density(const AnyState& state);

}  // namespace pwent

#endif  // PWENT_STATE_IO_HPP_
