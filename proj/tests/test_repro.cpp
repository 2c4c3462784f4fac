#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "pwent/repro.hpp"

using namespace pwent;

namespace {

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_csv_number(1.0) == "1");
  CHECK(format_csv_number(14.0 / 9) == "1.55555555556");
  CHECK(format_csv_number(0.0) == "0");
  CsvTable t{{"a", "b"}, {{0.5, 1.0 / 3}}};
  CHECK(t.to_csv() == "a,b\n0.5,0.333333333333\n");
}

TEST_CASE("figure ids") {
  CHECK(parse_figure_id("fig2b") == FigureId::fig2b);
  CHECK_THROWS_AS(parse_figure_id("fig4"), std::invalid_argument);
  CHECK_THROWS_AS(figure_table(FigureId::fig2b, 5), std::invalid_argument);
}

TEST_CASE("fig2b endpoints") {
  const auto t = figure_table(FigureId::fig2b, 101);
  REQUIRE(t.rows.size() == 101);
  const auto p = column(t, "p"), e = column(t, "E(AB)"), ext = column(t, "E_ext");
  CHECK(t.rows.back()[p] == 1.0);
  CHECK(t.rows.back()[ext] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.rows.back()[e] == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& row : t.rows)
    if (row[p] <= 1.0 / 3) CHECK(row[e] < 1e-12);
  CHECK(t.to_csv() == figure_table(FigureId::fig2b, 101).to_csv());
}

TEST_CASE("fig1 maximally mixed row") {
  const auto t = figure_table(FigureId::fig1, 11);
  CHECK(t.rows.size() == 121);
  const auto p = column(t, "p"), e = column(t, "E(AB)"), ext = column(t, "E_ext");
  for (const auto& row : t.rows)
    if (row[p] == 0.0) {
      CHECK(row[ext] == doctest::Approx(1.0 + std::sqrt(6.0) / 4).epsilon(1e-12));
      CHECK(row[e] == 0.0);
    }
}

TEST_CASE("fig2a and fig3 tables") {
  CHECK(figure_table(FigureId::fig2a, 11).rows.size() == 11);
  for (auto id : {FigureId::fig3a, FigureId::fig3b}) {
    const auto t = figure_table(id, 11);
    CHECK(t.header.size() == 6);
    // gpwem_gem of the purification equals E_ext of the two-qubit state.
    const auto g = column(t, "gpwem_gem(AB)"), ext = column(t, "E_ext");
    for (const auto& row : t.rows) CHECK(row[g] == doctest::Approx(row[ext]).epsilon(1e-10));
  }
}

TEST_CASE("check suites") {
  const auto paper = check_paper_table();
  CHECK(paper.size() == 8);
  CHECK(all_pass(paper));
  const auto inv = check_invariants(42);
  CHECK(all_pass(inv));
  CHECK(format_rows(inv) == format_rows(check_invariants(42)));
  CHECK(all_pass(check_oracle(42)));
  const auto text = format_rows(paper);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(text.find("h=lin-sq") != std::string::npos);

  auto bad = make_row("x", "cfg", 1.0, 2.0, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(all_pass({bad}));
  CHECK(format_rows({bad}).rfind("[FAIL]", 0) == 0);
}
