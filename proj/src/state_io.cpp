#include "pwent/state_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace pwent {

namespace {

std::string format_entry(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw StateFormatError(line, "malformed number '" + tok + "'");
  return v;
}

cplx parse_entry(const std::string& tok, int line) {
  const auto comma = tok.find(',');
  if (comma == std::string::npos) throw StateFormatError(line, "expected 're,im' but found '" + tok + "'");
  return {parse_double(tok.substr(0, comma), line), parse_double(tok.substr(comma + 1), line)};
}

}  // namespace

void save_state(std::ostream& out, const AnyState& state) {
  const RegisterShape& shape =
      std::visit([](const auto& s) -> const RegisterShape& { return s.shape(); }, state);
  out << "dims:";
  for (int d : shape.dims()) out << ' ' << d;
  out << '\n';
  if (const auto* psi = std::get_if<PureState>(&state)) {
    out << "kind: pure\n";
    for (Eigen::Index i = 0; i < psi->amp().size(); ++i) out << format_entry(psi->amp()(i)) << '\n';
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    out << "kind: mixed\n";
    for (Eigen::Index i = 0; i < rho.mat().rows(); ++i) {
      for (Eigen::Index j = 0; j < rho.mat().cols(); ++j) {
        if (j) out << ' ';
        out << format_entry(rho.mat()(i, j));
      }
      out << '\n';
    }
  }
}

AnyState load_state(std::istream& in) {
  std::string raw;
  int line = 0;
  std::vector<int> dims;
  std::string kind;
  std::vector<std::vector<cplx>> rows;
  std::vector<int> row_lines;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (dims.empty()) {
      if (s.rfind("dims:", 0) != 0) throw StateFormatError(line, "expected 'dims:' header");
      std::istringstream ss(s.substr(5));
      std::string tok;
      while (ss >> tok) {
        int d = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || d < 1)
          throw StateFormatError(line, "bad dimension '" + tok + "'");
        dims.push_back(d);
      }
      if (dims.empty()) throw StateFormatError(line, "'dims:' lists no dimensions");
      continue;
    }
    if (kind.empty()) {
      if (s.rfind("kind:", 0) != 0) throw StateFormatError(line, "expected 'kind:' header");
      kind = trim(s.substr(5));
      if (kind != "pure" && kind != "mixed") throw StateFormatError(line, "kind must be 'pure' or 'mixed'");
      continue;
    }
    std::istringstream ss(s);
    std::string tok;
    std::vector<cplx> row;
    while (ss >> tok) row.push_back(parse_entry(tok, line));
    rows.push_back(std::move(row));
    row_lines.push_back(line);
  }
  if (dims.empty()) throw StateFormatError(std::max(line, 1), "missing 'dims:' header");
  if (kind.empty()) throw StateFormatError(line, "missing 'kind:' header");

  const RegisterShape shape(dims);
  const auto dim = static_cast<Eigen::Index>(shape.total());
  try {
    if (kind == "pure") {
      if (static_cast<Eigen::Index>(rows.size()) != dim)
        throw StateFormatError(line, "expected " + std::to_string(dim) + " amplitude lines");
      CVector amp(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (rows[static_cast<std::size_t>(i)].size() != 1)
          throw StateFormatError(row_lines[static_cast<std::size_t>(i)], "expected one amplitude per line");
        amp(i) = rows[static_cast<std::size_t>(i)][0];
      }
      return PureState(shape, std::move(amp));
    }
    if (static_cast<Eigen::Index>(rows.size()) != dim)
      throw StateFormatError(line, "expected " + std::to_string(dim) + " matrix rows");
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != dim)
        throw StateFormatError(row_lines[static_cast<std::size_t>(i)],
                               "expected " + std::to_string(dim) + " entries in matrix row");
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    return DensityMatrix(shape, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw StateFormatError(line, e.what());
  }
}

void save_state_file(const std::string& path, const AnyState& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_state(out, state);
}

AnyState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_state(in);
}

DensityMatrix as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix(*psi);
  return std::get<DensityMatrix>(state);
}

}  // namespace pwent
