#include "strsat/reductions.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "strsat/sat_solver.hpp"
#include "strsat/strcore.hpp"
#include "strsat/textio.hpp"

namespace strsat {

std::optional<Fragment> parse_fragment(std::string_view name) {
  for (Fragment f : kAllFragments)
    if (fragment_flag(f) == name) return f;
  return std::nullopt;
}

std::string fragment_flag(Fragment f) {
  switch (f) {
    case Fragment::EC: return "ec";
    case Fragment::ETConst: return "etconst";
    case Fragment::EA: return "ea";
    case Fragment::EXConst: return "exconst";
    case Fragment::C: return "c";
    case Fragment::T: return "t";
  }
  return "";
}

std::string fragment_label(Fragment f) {
  switch (f) {
    case Fragment::EC: return "E+C";
    case Fragment::ETConst: return "E+T-CONST";
    case Fragment::EA: return "E+A";
    case Fragment::EXConst: return "E+X-CONST";
    case Fragment::C: return "C";
    case Fragment::T: return "T";
  }
  return "";
}

namespace {

std::string s_name(int k) { return "s" + std::to_string(k); }
std::string r_name(int k) { return "r" + std::to_string(k); }

// Single-letter alphabet for the fragments whose proofs only use "a" and the empty string.
bool unary(Fragment f) { return f == Fragment::EC || f == Fragment::EA; }

Term psi(int lit) { return Term::var(lit > 0 ? s_name(lit) : r_name(-lit)); }

Literal pos(Atom a) { return Literal{true, std::move(a)}; }
Literal neg(Atom a) { return Literal{false, std::move(a)}; }

}  // namespace

ReductionOutput reduce(Fragment fragment, const CnfInstance& phi, ReductionMode mode) {
  if (!is_3cnf(phi)) throw std::invalid_argument("input is not a 3-CNF formula");
  ReductionOutput out;
  out.fragment = fragment;
  out.mode = mode;
  out.config.alphabet = Alphabet(unary(fragment) ? "a" : "ab");
  out.config.l_max = 3;
  const bool repaired = mode == ReductionMode::Repaired;
  const Term eps = Term::constant("");
  auto& lits = out.formula.literals;

  for (int k = 1; k <= phi.num_vars; ++k) {
    out.var_map.emplace_back(s_name(k), r_name(k));
    out.config.declare(s_name(k), 1);
    out.config.declare(r_name(k), 1);
    Term s = Term::var(s_name(k)), r = Term::var(r_name(k));
    switch (fragment) {
      case Fragment::EC:
        lits.push_back(neg(Atom::eq(s, r)));
        break;
      case Fragment::ETConst:
      case Fragment::EXConst:
        lits.push_back(neg(Atom::eq(s, eps)));
        lits.push_back(neg(Atom::eq(r, eps)));
        lits.push_back(neg(Atom::eq(s, r)));
        break;
      case Fragment::EA:
        lits.push_back(pos(Atom::eq(Term::concat(s, r), Term::constant("a"))));
        break;
      case Fragment::C:
        lits.push_back(neg(Atom::contains(eps, s)));
        lits.push_back(neg(Atom::contains(eps, r)));
        lits.push_back(neg(Atom::contains(s, r)));
        break;
      case Fragment::T:
        if (repaired) {
          lits.push_back(neg(Atom::contains_at(eps, 1, s)));
          lits.push_back(neg(Atom::contains_at(eps, 1, r)));
        }
        lits.push_back(neg(Atom::contains_at(s, 1, r)));
        break;
    }
  }

  for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
    const auto& cl = phi.clauses[c];
    const std::string name = (fragment == Fragment::EA ? "p" : "V") + std::to_string(c + 1);
    out.clause_vars.push_back(name);
    out.config.declare(name, fragment == Fragment::EA ? 2 : 3);
    Term v = Term::var(name);
    switch (fragment) {
      case Fragment::EC:
        for (int l : cl) lits.push_back(pos(Atom::contains(v, psi(l))));
        lits.push_back(neg(Atom::eq(v, eps)));
        break;
      case Fragment::ETConst:
        for (std::size_t k = 0; k < 3; ++k) lits.push_back(pos(Atom::contains_at(v, k + 1, psi(cl[k]))));
        lits.push_back(neg(Atom::eq(v, Term::constant("bbb"))));
        break;
      case Fragment::EA: {
        Term sum = Term::concat(Term::concat(Term::concat(psi(cl[0]), psi(cl[1])), psi(cl[2])), v);
        lits.push_back(pos(Atom::eq(sum, Term::constant("aaa"))));
        break;
      }
      case Fragment::EXConst:
        for (std::size_t k = 0; k < 3; ++k) lits.push_back(pos(Atom::eq(Term::extract(v, k + 1, k + 1), psi(cl[k]))));
        lits.push_back(neg(Atom::eq(v, Term::constant("bbb"))));
        break;
      case Fragment::C:
        for (int l : cl) lits.push_back(pos(Atom::contains(v, psi(l))));
        lits.push_back(neg(Atom::contains(Term::constant("bbb"), v)));
        break;
      case Fragment::T:
        for (std::size_t k = 0; k < 3; ++k) lits.push_back(pos(Atom::contains_at(v, k + 1, psi(cl[k]))));
        lits.push_back(neg(Atom::contains_at(v, 1, Term::constant(repaired ? "bbb" : "bbbb"))));
        break;
    }
  }
  return out;
}

Assignment witness_forward(Fragment fragment, const CnfInstance& phi, const std::vector<bool>& values,
                           ReductionMode) {
  if (!is_3cnf(phi)) throw std::invalid_argument("input is not a 3-CNF formula");
  if (values.size() < static_cast<std::size_t>(phi.num_vars) || !eval_cnf(phi, values))
    throw std::invalid_argument("assignment does not satisfy the formula");
  const bool un = unary(fragment);
  auto value_of = [&](int lit) -> std::string {
    bool truth = values[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    if (un) return truth ? "a" : "";
    return truth ? "a" : "b";
  };

  Assignment a;
  for (int k = 1; k <= phi.num_vars; ++k) {
    a.set(s_name(k), value_of(k));
    a.set(r_name(k), value_of(-k));
  }
  for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
    const auto& cl = phi.clauses[c];
    const std::string id = std::to_string(c + 1);
    switch (fragment) {
      case Fragment::EC:
        a.set("V" + id, "a");
        break;
      case Fragment::EA: {
        std::string used = value_of(cl[0]) + value_of(cl[1]) + value_of(cl[2]);
        a.set("p" + id, std::string(3 - used.size(), 'a'));
        break;
      }
      default:
        a.set("V" + id, value_of(cl[0]) + value_of(cl[1]) + value_of(cl[2]));
        break;
    }
  }
  return a;
}

std::vector<bool> decode_bool(const ReductionOutput& out, const Assignment& a) {
  std::vector<bool> x;
  for (const auto& [s, r] : out.var_map) {
    const std::string* v = a.find(s);
    x.push_back(v && *v == "a");
  }
  return x;
}

namespace {

std::optional<std::vector<bool>> solve_cnf(const CnfInstance& phi) {
  sat::Solver solver;
  for (int i = 0; i < phi.num_vars; ++i) solver.new_var();
  for (const auto& cl : phi.clauses) {
    std::vector<sat::Lit> lits;
    for (int l : cl) lits.push_back(sat::Lit::from_dimacs(l));
    solver.add_clause(lits);
  }
  auto v = solver.solve();
  if (!v.sat) return std::nullopt;
  v.model.resize(static_cast<std::size_t>(phi.num_vars));
  return v.model;
}

}  // namespace

EquisatReport verify_equisat(Fragment fragment, const CnfInstance& phi, ReductionMode mode,
                             const EngineOptions& opts) {
  EquisatReport rep;
  auto phi_model = solve_cnf(phi);
  rep.phi_sat = phi_model.has_value();
  ReductionOutput out = reduce(fragment, phi, mode);
  SolveOutcome psi = solve(out.formula, out.config, opts);
  rep.psi_sat = psi.sat();
  if (rep.psi_sat) {
    rep.psi_model = psi.model;
    rep.decoded_ok = eval_cnf(phi, decode_bool(out, psi.model));
  }
  if (phi_model) rep.forward_ok = eval_formula(out.formula, witness_forward(fragment, phi, *phi_model, mode), out.config);
  if (rep.phi_sat != rep.psi_sat) {
    std::string text = rep.phi_sat ? "phi satisfiable but encoding unsatisfiable\n"
                                   : "phi unsatisfiable but encoding satisfiable\n";
    text += write_dimacs(phi);
    if (rep.psi_model) text += write_model(*rep.psi_model);
    rep.counterexample = std::move(text);
  }
  return rep;
}

std::optional<CnfInstance> minimal_backward_counterexample(Fragment fragment, ReductionMode mode, int max_vars,
                                                           int max_clauses) {
  for (int n = 1; n <= max_vars; ++n) {
    std::vector<int> literals;  // -1, 1, -2, 2, ...
    for (int k = 1; k <= n; ++k) literals.insert(literals.end(), {-k, k});
    std::vector<std::vector<int>> clauses;
    const std::size_t L = literals.size();
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i; j < L; ++j)
        for (std::size_t k = j; k < L; ++k) clauses.push_back({literals[i], literals[j], literals[k]});

    for (int m = 1; m <= max_clauses; ++m) {
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      std::optional<CnfInstance> found;
      std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t depth, std::size_t from) {
        if (depth == pick.size()) {
          CnfInstance phi{n, {}};
          for (std::size_t idx : pick) phi.clauses.push_back(clauses[idx]);
          if (solve_cnf(phi)) return false;
          ReductionOutput out = reduce(fragment, phi, mode);
          if (!solve(out.formula, out.config).sat()) return false;
          found = phi;
          return true;
        }
        for (std::size_t c = from; c < clauses.size(); ++c) {
          pick[depth] = c;
          if (walk(depth + 1, c)) return true;
        }
        return false;
      };
      if (walk(0, 0)) return found;
    }
  }
  return std::nullopt;
}

CnfInstance gen_random_3cnf(int n, int m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("need at least three variables");
  std::mt19937_64 rng(seed);
  CnfInstance cnf{n, {}};
  for (int c = 0; c < m; ++c) {
    std::vector<int> clause;
    while (clause.size() < 3) {
      int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
      bool dup = false;
      for (int l : clause) dup = dup || std::abs(l) == v;
      if (!dup) clause.push_back(v);
    }
    for (int& l : clause)
      if (rng() & 1) l = -l;
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

CnfInstance gen_random_3cnf_with_repeats(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one variable");
  std::mt19937_64 rng(seed);
  CnfInstance cnf{n, {}};
  for (int c = 0; c < m; ++c) {
    std::vector<int> clause;
    for (int k = 0; k < 3; ++k) {
      int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
      clause.push_back((rng() & 1) ? -v : v);
    }
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

}  // namespace strsat
