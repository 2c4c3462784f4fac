// pwent: command-line front end for the partitewise-entanglement library.
//
//   pwent state make|show|load|save ...
//   pwent measure --state <alias|file> --designated A,B --id <measure> ...
//   pwent figure <fig1|fig2a|fig2b|fig3a|fig3b> [--points N] [-o out.csv]
//   pwent check <paper-table|invariants|oracle> [--seed S]
//
// Exit codes: 0 success, 1 check failure, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pwent/extensibility.hpp"
#include "pwent/measures.hpp"
#include "pwent/repro.hpp"
#include "pwent/separability.hpp"
#include "pwent/state_io.hpp"
#include "pwent/states.hpp"

namespace {

using namespace pwent;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PWENT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("PWENT_SEED", "must be a non-negative integer");
    }
  }
  return 42;
}

std::string num(double v) { return format_csv_number(v); }

AnyState make_family(const std::string& family, int parties, int dim, double p, double t) {
  switch (parse_state_family(family)) {
    case StateFamily::ghz: return make_ghz(parties, dim);
    case StateFamily::w: return make_w(parties);
    case StateFamily::bell: return make_bell();
    case StateFamily::ame5: return make_ame5();
    case StateFamily::fig1: return fig1_state(p, t);
    case StateFamily::fig2a: return fig2a_state(p);
    case StateFamily::fig2b: return fig2b_state(p);
  }
  throw std::invalid_argument("unknown family");
}

// Named states (ghz3, w3, bell, ame5, ghz<n>, w<n>) or a state file path.
AnyState resolve_state(const std::string& ref) {
  if (ref == "bell") return make_bell();
  if (ref == "ame5") return make_ame5();
  auto numbered = [&](const std::string& prefix) -> int {
    if (ref.size() <= prefix.size() || ref.rfind(prefix, 0) != 0) return 0;
    const std::string tail = ref.substr(prefix.size());
    if (tail.find_first_not_of("0123456789") != std::string::npos) return 0;
    return std::stoi(tail);
  };
  if (int n = numbered("ghz")) return make_ghz(n, 2);
  if (int n = numbered("w")) return make_w(n);
  return load_state_file(ref);
}

std::vector<int> parse_designated(const std::string& spec, const RegisterShape& shape) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int p = -1;
    if (tok.size() == 1 && tok[0] >= 'A' && tok[0] <= 'Z')
      p = tok[0] - 'A';
    else if (tok.find_first_not_of("0123456789") == std::string::npos)
      p = std::stoi(tok);
    else
      throw std::invalid_argument("bad party '" + tok + "' in --designated");
    out.push_back(p);
  }
  validate_designated(shape, out);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

std::string serialize(const AnyState& s) {
  std::ostringstream os;
  save_state(os, s);
  return os.str();
}

void show_state(const AnyState& state) {
  const DensityMatrix rho = as_density(state);
  const bool pure = std::holds_alternative<PureState>(state);
  std::cout << "shape: " << rho.shape().to_string() << "\n";
  std::cout << "kind: " << (pure ? "pure" : "mixed") << "\n";
  std::cout << "rank: " << numerical_rank(rho) << "\n";
  std::cout << "linear_entropy: " << num(linear_entropy(rho)) << "\n";
  auto spectrum = [](const DensityMatrix& m) {
    std::string s;
    for (double v : hermitian_eig(m.mat()).eigvals) s += (s.empty() ? "" : " ") + num(std::abs(v) < 1e-14 ? 0.0 : v);
    return s;
  };
  std::cout << "spectrum: " << spectrum(rho) << "\n";
  if (rho.parties() > 1) {
    for (int p = 0; p < rho.parties(); ++p) {
      const auto m = partial_trace(rho, {p});
      std::cout << "marginal " << party_label(p) << ": S_L=" << num(linear_entropy(m)) << " spectrum=" << spectrum(m)
                << "\n";
    }
  }
  if (pure) {
    const auto fact = finest_factorization(std::get<PureState>(state));
    std::string f;
    for (const auto& factor : fact.factors) f += (f.empty() ? "" : "|") + party_set_label(factor.parties);
    std::cout << "factorization: " << f << (fact.borderline ? " (borderline)" : "") << "\n";
  }
}

struct MeasureArgs {
  std::string state;
  std::string designated = "A,B";
  std::string id;
  std::string h = "lin-sq";
  std::string eg;
  std::string e2 = "wootters";
  int restarts = 8;
};

void run_measure(const MeasureArgs& a, std::uint64_t seed) {
  const AnyState state = resolve_state(a.state);
  const DensityMatrix rho = as_density(state);
  const PureState* psi = std::get_if<PureState>(&state);
  const bool roof_needed = psi == nullptr && numerical_rank(rho) > 1;

  MeasureConfig cfg;
  if (a.id == "e-ext") cfg = extensibility_config();
  cfg.h = parse_reduced_function(a.id == "e-ext" && a.h == "lin-sq" ? "lin-sqrt" : a.h);
  if (!a.eg.empty())
    cfg.genuine = parse_genuine_form(a.eg);
  else if (a.id == "gpwem-gem" || a.id == "e-ext")
    cfg.genuine = GenuineForm::half_sum;
  if (a.e2 == "roof")
    cfg.bipartite_rule = BipartiteMixedRule::convex_roof_always;
  else if (a.e2 != "wootters")
    throw std::invalid_argument("--e2 must be 'wootters' or 'roof'");
  cfg.seed = seed;
  cfg.roof.restarts = a.restarts;

  std::vector<int> designated;
  if (a.id != "e-ext") designated = parse_designated(a.designated, rho.shape());

  std::string label = "exact";
  double value = 0.0;
  std::string provenance = cfg.describe();
  std::string extra;

  auto pure_route = [&](const PureMeasure& m) {
    if (!roof_needed) {
      const DensityMatrix& r = rho;
      const PureState top = psi ? *psi : PureState::normalized(r.shape(), hermitian_eig(r.mat()).eigvecs.col(0));
      return m(top);
    }
    label = "upper bound";
    const auto res = roof_upper_bound(rho, m, cfg);
    extra = " roof_ensemble=" + std::to_string(res.ensemble.size()) + " converged=" + (res.converged ? "yes" : "no");
    return res.value;
  };

  Aggregate agg = Aggregate::min;
  auto parse_agg = [&](const std::string& suffix) {
    if (suffix == "min") return Aggregate::min;
    if (suffix == "sum") return Aggregate::sum;
    if (suffix == "geo") return Aggregate::geo;
    throw std::invalid_argument("unknown measure id '" + a.id + "'");
  };

  if (a.id == "pwem-gem") {
    value = pure_route([&](const PureState& s) { return pwem_gem_pure(s, designated, cfg); });
  } else if (a.id == "gpwem-gem") {
    value = pure_route([&](const PureState& s) { return gpwem_gem_pure(s, designated, cfg); });
  } else if (a.id.rfind("pw-", 0) == 0) {
    agg = parse_agg(a.id.substr(3));
    provenance = "h=" + to_string(cfg.h) + ",variant=" + to_string(agg);
    value = pure_route([&](const PureState& s) { return pwem_bipartition(s, designated, cfg.h, agg, cfg.zero_tol); });
  } else if (a.id.rfind("neg-", 0) == 0) {
    agg = parse_agg(a.id.substr(4));
    provenance = "negativity,variant=" + to_string(agg);
    value = pwem_negativity(rho, designated, agg, cfg.zero_tol);
  } else if (a.id == "geo-distance") {
    GeometricBudget budget;
    budget.seed = seed;
    provenance = "see-saw,restarts=" + std::to_string(budget.restarts) + ",seed=" + std::to_string(seed);
    if (!roof_needed) {
      const PureState top = psi ? *psi : PureState::normalized(rho.shape(), hermitian_eig(rho.mat()).eigvecs.col(0));
      const auto res = geometric_pwem(top, designated, budget);
      value = res.value;
      label = "upper bound";
      extra = " best_partition=" + res.best_partition.to_string() + " max_overlap=" + num(res.max_overlap);
    } else {
      value = pure_route([&](const PureState& s) { return geometric_pwem(s, designated, budget).value; });
    }
  } else if (a.id == "rel-entropy-ub") {
    const auto res = relative_entropy_pwem_upper(rho, designated);
    provenance = "candidates=marginal-products+dephased";
    label = "upper bound";
    if (!res.finite) {
      std::cout << "id=rel-entropy-ub value=inf kind=upper bound (no finite bound) config=" << provenance << "\n";
      return;
    }
    value = res.value;
    extra = " best_candidate=\"" + res.best_candidate + "\"";
  } else if (a.id == "e-ext") {
    value = e_ext(rho, cfg);
  } else {
    throw std::invalid_argument("unknown measure id '" + a.id + "'");
  }

  std::cout << "id=" << a.id << " value=" << num(value) << " kind=" << label;
  if (!designated.empty()) {
    std::string d;
    for (int p : designated) d += party_label(p);
    std::cout << " designated=" << d;
  }
  std::cout << " config=" << provenance << extra << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partitewise entanglement measures, extensibility, and figure reproduction"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed may follow the subcommand

  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "RNG seed (default: $PWENT_SEED or 42)");

  // state
  auto* state_cmd = app.add_subcommand("state", "Construct, inspect and round-trip state files");
  state_cmd->require_subcommand(1);
  std::string family, out_path, in_path;
  int parties = 3, dim = 2;
  double p = 0.5, t = 0.5;
  auto* make_cmd = state_cmd->add_subcommand("make", "Write a named state to a file (or stdout)");
  make_cmd->add_option("family", family, "ghz|w|bell|ame5|fig1|fig2a|fig2b")->required();
  make_cmd->add_option("--parties", parties, "Party count (ghz, w)");
  make_cmd->add_option("--dim", dim, "Local dimension (ghz)");
  make_cmd->add_option("--p", p, "Mixing parameter in [0,1]");
  make_cmd->add_option("--t", t, "fig1 amplitude parameter in [0,1]");
  make_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
  auto* show_cmd = state_cmd->add_subcommand("show", "Print spectrum, marginals and linear entropies");
  show_cmd->add_option("state", in_path, "State file or named state")->required();
  auto* load_cmd = state_cmd->add_subcommand("load", "Validate a state file");
  load_cmd->add_option("file", in_path, "State file")->required();
  auto* save_cmd = state_cmd->add_subcommand("save", "Load a state (file or name) and write it in canonical form");
  save_cmd->add_option("state", in_path, "State file or named state")->required();
  save_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  // measure
  MeasureArgs margs;
  auto* measure_cmd = app.add_subcommand("measure", "Evaluate a partitewise entanglement measure");
  measure_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  measure_cmd->add_option("--state", margs.state, "Named state (ghz3, w3, bell, ame5) or file")->required();
  measure_cmd->add_option("--designated", margs.designated, "Designated parties, e.g. A,B or 0,1");
  measure_cmd
      ->add_option("--id", margs.id,
                   "pwem-gem|gpwem-gem|pw-min|pw-sum|pw-geo|neg-min|neg-sum|neg-geo|geo-distance|rel-entropy-ub|e-ext")
      ->required();
  measure_cmd->add_option("--h", margs.h, "Reduced function: lin-sq|lin-sqrt|von-neumann");
  measure_cmd->add_option("--eg", margs.eg, "Genuine form: min|half-sum");
  measure_cmd->add_option("--e2", margs.e2, "Two-party mixed term: wootters|roof");
  measure_cmd->add_option("--restarts", margs.restarts, "Convex-roof starts for mixed input");

  // figure
  std::string figure_id;
  int points = 101;
  auto* figure_cmd = app.add_subcommand("figure", "Emit figure data as CSV");
  figure_cmd->add_option("id", figure_id, "fig1|fig2a|fig2b|fig3a|fig3b")->required();
  figure_cmd->add_option("--points", points, "Grid points per axis (>= 11)");
  figure_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  // check
  std::string suite;
  auto* check_cmd = app.add_subcommand("check", "Run a reproduction or property suite");
  check_cmd->add_option("suite", suite, "paper-table|invariants|oracle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();

    if (*make_cmd) {
      write_output(out_path, serialize(make_family(family, parties, dim, p, t)));
    } else if (*show_cmd) {
      show_state(resolve_state(in_path));
    } else if (*load_cmd) {
      const auto s = load_state_file(in_path);
      std::cout << "ok: " << (std::holds_alternative<PureState>(s) ? "pure" : "mixed") << " state, shape "
                << as_density(s).shape().to_string() << "\n";
    } else if (*save_cmd) {
      write_output(out_path, serialize(resolve_state(in_path)));
    } else if (*measure_cmd) {
      run_measure(margs, seed);
    } else if (*figure_cmd) {
      write_output(out_path, figure_table(parse_figure_id(figure_id), points).to_csv());
    } else if (*check_cmd) {
      std::vector<ReportRow> rows;
      if (suite == "paper-table")
        rows = check_paper_table();
      else if (suite == "invariants")
        rows = check_invariants(seed);
      else if (suite == "oracle")
        rows = check_oracle(seed);
      else
        throw std::invalid_argument("unknown suite '" + suite + "'");
      std::cout << format_rows(rows);
      int passed = 0;
      for (const auto& r : rows) passed += r.pass ? 1 : 0;
      std::cout << passed << "/" << rows.size() << " pass\n";
      return all_pass(rows) ? 0 : kExitCheckFailed;
    }
  } catch (const StateFormatError& e) {
    std::cerr << "pwent: malformed state file, " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pwent: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
