#include <sstream>

#include "doctest.h"
#include "pwent/random.hpp"
#include "pwent/state_io.hpp"
#include "pwent/states.hpp"

using namespace pwent;

namespace {

std::string dump(const AnyState& s) {
  std::ostringstream os;
  save_state(os, s);
  return os.str();
}

AnyState parse(const std::string& text) {
  std::istringstream is(text);
  return load_state(is);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const StateFormatError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("round trips are byte-identical") {
  std::vector<AnyState> states{make_ghz(3, 2), make_ame5(), random_pure(RegisterShape({3, 2}), 4), fig2b_state(0.37),
                               random_mixed(RegisterShape({2, 3}), 4, 2)};
  for (const auto& s : states) {
    const std::string first = dump(s);
    const auto loaded = parse(first);
    CHECK(dump(loaded) == first);
    CHECK((as_density(loaded).mat() - as_density(s).mat()).norm() == 0.0);
  }
}

TEST_CASE("file layout") {
  const std::string text = dump(make_ghz(3, 2));
  CHECK(text.rfind("dims: 2 2 2\nkind: pure\n", 0) == 0);
  const std::string mixed = dump(fig2b_state(0.5));
  CHECK(mixed.rfind("dims: 2 2\nkind: mixed\n", 0) == 0);
  CHECK(std::count(mixed.begin(), mixed.end(), '\n') == 6);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto s = parse("# a Bell pair\ndims: 2 2\n\nkind: pure\n0.70710678118654757,0  # |00>\n0,0\n0,0\n0.70710678118654757,0\n");
  REQUIRE(std::holds_alternative<PureState>(s));
  CHECK(overlap(std::get<PureState>(s), make_bell()) == doctest::Approx(1.0));
}

TEST_CASE("malformed files report the offending line") {
  CHECK(error_line("") == 1);
  CHECK(error_line("dims: 2 x\nkind: pure\n1,0\n0,0\n0,0\n0,0\n") == 1);
  CHECK(error_line("dims: 2 2\nkind: fuzzy\n") == 2);
  CHECK(error_line("dims: 2\nkind: pure\n1,0\n0;0\n") == 4);
  CHECK(error_line("dims: 2\nkind: pure\n1,0\n") == 3);                // too few entries
  CHECK(error_line("dims: 2\nkind: pure\n1,0\n0,0\n0,0\n") == 5);      // too many
  CHECK(error_line("dims: 2\nkind: pure\n1,0\n1,0\n") == 4);           // not normalized
  CHECK(error_line("dims: 2\nkind: mixed\n1,0 0,0\n0,0\n") == 4);      // short row
  CHECK(error_line("dims: 2\nkind: mixed\n0.5,0 0.3,0\n0,0 0.5,0\n") == 4);  // not Hermitian
  CHECK_THROWS_AS(load_state_file("/nonexistent/state.txt"), std::runtime_error);
}
