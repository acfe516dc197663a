// strsat command-line driver.
//
// Exit codes: 10 sat, 20 unsat, 30 unknown, 1 error, 0 success otherwise.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strsat/bitblast.hpp"
#include "strsat/engine.hpp"
#include "strsat/oracle.hpp"
#include "strsat/reductions.hpp"
#include "strsat/sat_solver.hpp"
#include "strsat/strcore.hpp"
#include "strsat/textio.hpp"

namespace {

using namespace strsat;

constexpr int kSat = 10;
constexpr int kUnsat = 20;
constexpr int kUnknown = 30;
constexpr int kError = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("STRSAT_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

Fragment fragment_or_throw(const std::string& name) {
  auto f = parse_fragment(name);
  if (!f) throw std::invalid_argument("unknown fragment '" + name + "'");
  return *f;
}

// Accepts "5..9" or "5,6,9".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

struct SolveArgs {
  std::string file;
  std::string mode = "monolithic";
  std::optional<std::size_t> max_len;
  std::uint64_t seed = 0;
  std::string dump_cnf;
  std::optional<std::size_t> enumerate;
};

int cmd_solve(const SolveArgs& args) {
  StrfProgram prog = parse_strf(read_file(args.file));
  SolverConfig cfg = prog.config;
  if (args.max_len) cfg.l_max = *args.max_len;
  cfg.seed = args.seed;

  if (!args.dump_cnf.empty()) {
    sat::Solver solver;
    Encoder enc(cfg, solver);
    enc.encode_formula(prog.formula);
    write_file(args.dump_cnf, write_dimacs(solver.export_cnf()));
  }

  if (args.enumerate) {
    auto models = enumerate_models(prog.formula, cfg, *args.enumerate);
    if (models.empty()) {
      std::cout << "unsat\n";
      return kUnsat;
    }
    std::cout << "sat\n";
    for (std::size_t i = 0; i < models.size(); ++i) std::cout << (i ? "\n" : "") << write_model(models[i]);
    return kSat;
  }

  EngineOptions opts;
  opts.mode = args.mode == "staged" ? Mode::Staged : Mode::Monolithic;
  SolveOutcome out = solve(prog.formula, cfg, opts);
  if (!out.sat()) {
    std::cout << "unsat\n";
    return kUnsat;
  }
  std::cout << "sat\n";
  if (prog.document.has(DirectiveKind::GetModel)) std::cout << write_model(out.model);
  return kSat;
}

int cmd_reduce(const std::string& fragment, bool repaired, const std::string& input, const std::string& output) {
  CnfInstance phi = parse_dimacs(read_file(input));
  ReductionOutput out = reduce(fragment_or_throw(fragment), phi,
                               repaired ? ReductionMode::Repaired : ReductionMode::Verbatim);
  std::string text = print_strf(out.formula, out.config) + "(check-sat)\n(get-model)\n";
  if (output.empty()) std::cout << text;
  else write_file(output, text);
  return 0;
}

int cmd_decode(const std::string& fragment, bool repaired, const std::string& model_file, const std::string& cnf_file) {
  CnfInstance phi = parse_dimacs(read_file(cnf_file));
  Assignment model = parse_model(read_file(model_file));
  ReductionOutput out = reduce(fragment_or_throw(fragment), phi,
                               repaired ? ReductionMode::Repaired : ReductionMode::Verbatim);
  std::vector<bool> x = decode_bool(out, model);
  std::cout << "v";
  for (std::size_t k = 0; k < x.size(); ++k) std::cout << ' ' << (x[k] ? "" : "-") << k + 1;
  std::cout << " 0\n";
  std::cout << (eval_cnf(phi, x) ? "c satisfies the input formula\n" : "c does not satisfy the input formula\n");
  return 0;
}

struct VerifyArgs {
  std::string fragment;
  int vars = 3;
  int clauses = 3;
  int count = 10;
  std::uint64_t seed = 0;
  bool repaired = false;
  std::string cnf;
};

int cmd_verify(const VerifyArgs& args) {
  Fragment frag = fragment_or_throw(args.fragment);
  ReductionMode mode = args.repaired ? ReductionMode::Repaired : ReductionMode::Verbatim;
  std::vector<std::pair<std::string, CnfInstance>> instances;
  if (!args.cnf.empty()) {
    instances.emplace_back(args.cnf, parse_dimacs(read_file(args.cnf)));
  } else {
    for (int i = 0; i < args.count; ++i)
      instances.emplace_back("random-" + std::to_string(i),
                             gen_random_3cnf(args.vars, args.clauses, args.seed + static_cast<std::uint64_t>(i)));
  }

  std::cout << "instance phi_sat psi_sat decoded_ok\n";
  int agree = 0, forward_failures = 0;
  for (const auto& [name, phi] : instances) {
    EquisatReport rep = verify_equisat(frag, phi, mode);
    std::cout << name << ' ' << (rep.phi_sat ? "sat" : "unsat") << ' ' << (rep.psi_sat ? "sat" : "unsat") << ' '
              << (rep.decoded_ok ? (*rep.decoded_ok ? "yes" : "no") : "n/a") << '\n';
    if (rep.phi_sat == rep.psi_sat) ++agree;
    if (!rep.forward_ok) {
      ++forward_failures;
      std::cout << "c forward witness rejected on " << name << '\n';
    }
    if (rep.counterexample) {
      std::istringstream lines(*rep.counterexample);
      for (std::string line; std::getline(lines, line);) std::cout << "c " << line << '\n';
    }
  }
  std::cout << "c agree " << agree << '/' << instances.size() << ", forward failures " << forward_failures << '\n';
  return forward_failures ? kError : 0;
}

int cmd_oracle(const std::string& file, std::optional<std::uint64_t> budget, bool count) {
  StrfProgram prog = parse_strf(read_file(file));
  SolverConfig cfg = prog.config;
  if (budget) cfg.oracle_budget = *budget;
  OracleResult res = enumerate_sat(prog.formula, cfg, count);
  switch (res.verdict) {
    case OracleVerdict::BudgetExceeded:
      std::cout << "unknown\n";
      return kUnknown;
    case OracleVerdict::Unsat:
      std::cout << (count ? "unsat 0\n" : "unsat\n");
      return kUnsat;
    case OracleVerdict::Sat:
      if (count) std::cout << "sat " << *res.model_count << '\n';
      else std::cout << "sat\n";
      if (prog.document.has(DirectiveKind::GetModel)) std::cout << write_model(*res.first_model);
      return kSat;
  }
  return kError;
}

int cmd_bench(const std::string& family, const std::string& sizes, std::uint64_t seed) {
  Fragment frag = fragment_or_throw(family);
  std::cout << "instance,size,mode,verdict,sat_calls,time\n";
  for (int n : parse_sizes(sizes)) {
    CnfInstance phi = gen_random_3cnf(n, 2 * n, seed + static_cast<std::uint64_t>(n));
    ReductionOutput out = reduce(frag, phi);
    for (Mode mode : {Mode::Monolithic, Mode::Staged}) {
      EngineOptions opts;
      opts.mode = mode;
      SolveOutcome res = solve(out.formula, out.config, opts);
      std::cout << family << "-n" << n << ',' << n << ',' << (mode == Mode::Staged ? "staged" : "monolithic") << ','
                << (res.sat() ? "sat" : "unsat") << ',' << res.stats.sat_calls << ',' << std::fixed
                << std::setprecision(6) << res.stats.wall_time << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded string constraint solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  solve_args.seed = default_seed();
  auto* solve_cmd = app.add_subcommand("solve", "Decide a .strf file");
  solve_cmd->add_option("file", solve_args.file, "Input .strf file")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "monolithic or staged")
      ->check(CLI::IsMember({"monolithic", "staged"}));
  solve_cmd->add_option("--max-len", solve_args.max_len, "Override the maximum string length");
  solve_cmd->add_option("--seed", solve_args.seed, "Seed (default: STRSAT_SEED or 0)");
  solve_cmd->add_option("--dump-cnf", solve_args.dump_cnf, "Write the DIMACS encoding of the input formula");
  solve_cmd->add_option("--enumerate", solve_args.enumerate, "Print up to K distinct models");

  std::string fragment, input, output;
  bool repaired = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Encode a DIMACS 3-CNF formula as string constraints");
  reduce_cmd->add_option("--fragment", fragment, "ec, etconst, ea, exconst, c or t")->required();
  reduce_cmd->add_flag("--repaired", repaired, "Use the repaired T encoding");
  reduce_cmd->add_option("input", input, "DIMACS file")->required();
  reduce_cmd->add_option("-o,--output", output, "Output .strf file (default: stdout)");

  std::string model_file, cnf_file;
  auto* decode_cmd = app.add_subcommand("decode", "Read a Boolean assignment back from a string model");
  decode_cmd->add_option("--fragment", fragment, "Fragment used for the reduction")->required();
  decode_cmd->add_flag("--repaired", repaired, "The reduction used the repaired T encoding");
  decode_cmd->add_option("model", model_file, "Model file with define-str lines")->required();
  decode_cmd->add_option("cnf", cnf_file, "Original DIMACS file")->required();

  VerifyArgs verify_args;
  verify_args.seed = default_seed();
  auto* verify_cmd = app.add_subcommand("verify-reduction", "Compare a formula and its encoding on random instances");
  verify_cmd->add_option("--fragment", verify_args.fragment, "Fragment")->required();
  verify_cmd->add_option("--vars", verify_args.vars, "Boolean variables")->check(CLI::Range(3, 16));
  verify_cmd->add_option("--clauses", verify_args.clauses, "Clauses")->check(CLI::Range(0, 1000));
  verify_cmd->add_option("--count", verify_args.count, "Instances")->check(CLI::Range(1, 100000));
  verify_cmd->add_option("--seed", verify_args.seed, "Seed (default: STRSAT_SEED or 0)");
  verify_cmd->add_flag("--repaired", verify_args.repaired, "Use the repaired T encoding");
  verify_cmd->add_option("--cnf", verify_args.cnf, "Check this DIMACS file instead of random instances");

  std::string oracle_file;
  std::optional<std::uint64_t> budget;
  bool count = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide a .strf file by exhaustive enumeration");
  oracle_cmd->add_option("file", oracle_file, "Input .strf file")->required();
  oracle_cmd->add_option("--budget", budget, "Maximum number of assignments");
  oracle_cmd->add_flag("--count", count, "Count all models");

  std::string family, sizes = "5..9";
  std::uint64_t bench_seed = default_seed();
  auto* bench_cmd = app.add_subcommand("bench", "Time both modes on reduction outputs (2n clauses per size n)");
  bench_cmd->add_option("--family", family, "Reduction fragment")->required();
  bench_cmd->add_option("--sizes", sizes, "Sizes as LO..HI or a comma list");
  bench_cmd->add_option("--seed", bench_seed, "Seed (default: STRSAT_SEED or 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args);
    if (*reduce_cmd) return cmd_reduce(fragment, repaired, input, output);
    if (*decode_cmd) return cmd_decode(fragment, repaired, model_file, cnf_file);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*oracle_cmd) return cmd_oracle(oracle_file, budget, count);
    if (*bench_cmd) return cmd_bench(family, sizes, bench_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
