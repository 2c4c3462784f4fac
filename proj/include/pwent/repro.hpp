#ifndef PWENT_REPRO_HPP_
#define PWENT_REPRO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pwent {

struct ReportRow {
  std::string quantity;
  std::string config;
  double value = 0.0;
  std::optional<double> expected;
  double tolerance = 0.0;
  bool pass = true;
};

/// pass = |value - expected| <= tolerance when an expectation is given.
ReportRow make_row(std::string quantity, std::string config, double value, std::optional<double> expected,
                   double tolerance);
std::string format_rows(const std::vector<ReportRow>& rows);
bool all_pass(const std::vector<ReportRow>& rows);

/// 12 significant digits, '.' decimal point.
std::string format_csv_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

enum class FigureId { fig1, fig2a, fig2b, fig3a, fig3b };
FigureId parse_figure_id(const std::string& s);

/// Grid of `points` values per axis over [0, 1]; points must be >= 11.
CsvTable figure_table(FigureId id, int points);

/// The six W/GHZ comparison values and the two extensibility endpoints.
std::vector<ReportRow> check_paper_table();
/// Seeded property suites: local-unitary invariance, purification marginals,
/// Schmidt symmetry, partial-transpose involution.
std::vector<ReportRow> check_invariants(std::uint64_t seed);
/// Factorization and partitewise separability against brute-force search.
std::vector<ReportRow> check_oracle(std::uint64_t seed);

}  // namespace pwent

#endif  // PWENT_REPRO_HPP_
