#include "strsat/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "strsat/bitblast.hpp"
#include "strsat/preprocess.hpp"
#include "strsat/sat_solver.hpp"
#include "strsat/strcore.hpp"

namespace strsat {

namespace {

using sat::Lit;

Assignment complete_model(const Formula& f, const SolverConfig& cfg, const Assignment& m) {
  Assignment full;
  for (const auto& name : model_variables(f, cfg)) {
    const std::string* v = m.find(name);
    full.set(name, v ? *v : std::string());
  }
  return full;
}

void check_or_throw(const Formula& f, const SolverConfig& cfg, const Assignment& m) {
  ModelCheck chk = validate_model(f, m, cfg);
  if (!chk) throw std::logic_error("solver produced an invalid model: " + chk.violation);
}

struct CoreResult {
  std::optional<Assignment> model;
  std::string reason;
};

CoreResult run_monolithic(const Formula& f, const SolverConfig& cfg, SolveStats& stats) {
  sat::Solver solver;
  Encoder enc(cfg, solver);
  EncodeResult res = enc.encode_formula(f);
  auto v = solver.solve();
  ++stats.sat_calls;
  if (!v.sat) return {std::nullopt, "propositional encoding is unsatisfiable"};
  return {decode_model(res, v.model), ""};
}

struct Window {
  std::size_t group = 0;  // index into EncodeResult::contains
  std::size_t lo = 1, hi = 1;
  Lit lit;
};

// Doubles the window width, growing to the right first.
void widen(Window& w, std::size_t positions) {
  std::size_t add = w.hi - w.lo + 1;
  std::size_t new_hi = std::min(positions, w.hi + add);
  add -= new_hi - w.hi;
  w.hi = new_hi;
  w.lo -= std::min(w.lo - 1, add);
}

Lit window_literal(sat::Solver& solver, const ContainsSelectors& sel, std::size_t lo, std::size_t hi) {
  Lit w(solver.new_var());
  std::vector<Lit> cl{~w};
  for (std::size_t i = lo; i <= hi; ++i) cl.push_back(sel.selectors[i - 1]);
  solver.add_clause(cl);
  return w;
}

CoreResult run_staged(const Formula& f, const SolverConfig& cfg, const EngineOptions& opts, SolveStats& stats) {
  const LengthSystem sys = derive_length_constraints(f, cfg);
  if (solve_lengths(sys, {}, opts.length_node_limit).status == LengthResult::Status::AbstractUnsat) {
    stats.abstract_unsat = true;
    return {std::nullopt, "length abstraction is unsatisfiable"};
  }
  sat::Solver solver;
  Encoder enc(cfg, solver);
  EncodeResult res = enc.encode_formula(f);
  if (!solver.okay()) return {std::nullopt, "propositional encoding is unsatisfiable"};

  std::vector<std::size_t> var_index;  // per res.var_order entry
  for (const auto& name : res.var_order) var_index.push_back(*sys.index_of(Term::var(name)));

  std::vector<LengthNogood> blocked;
  bool fallback = false;
  while (!fallback) {
    if (stats.candidates_tried >= opts.max_length_candidates) {
      fallback = true;
      break;
    }
    LengthResult cand = solve_lengths(sys, blocked, opts.length_node_limit);
    if (cand.status == LengthResult::Status::AbstractUnsat) {
      stats.abstract_unsat = true;
      return {std::nullopt, "length abstraction is unsatisfiable"};
    }
    if (cand.status == LengthResult::Status::LimitReached) {
      fallback = true;
      break;
    }
    ++stats.candidates_tried;

    std::vector<Lit> length_lits;
    std::map<int, std::pair<std::size_t, std::size_t>> length_of;  // lit code -> (term, length)
    for (std::size_t v = 0; v < res.var_order.size(); ++v) {
      const TermLayout& layout = res.vars.at(res.var_order[v]);
      std::size_t len = cand.lengths[var_index[v]];
      for (Lit l : {res.length_at_least(layout, len), ~res.length_at_least(layout, len + 1)}) {
        if (l == res.top) continue;
        length_lits.push_back(l);
        length_of[l.code()] = {var_index[v], len};
      }
    }

    // Needles of one haystack are laid out left to right with one filler cell between them.
    std::vector<Window> windows;
    std::map<std::string, std::size_t> cursor;
    for (std::size_t g = 0; g < res.contains.size(); ++g) {
      const auto& sel = res.contains[g];
      const Atom& atom = f.literals[sel.literal_index].atom;
      std::size_t lh = cand.lengths[*sys.index_of(atom.lhs)];
      std::size_t ln = cand.lengths[*sys.index_of(atom.rhs)];
      std::size_t& p = cursor.try_emplace(atom.lhs.key(), 1).first->second;
      std::size_t pos = ln <= lh ? std::min(p, lh - ln + 1) : 1;
      pos = std::clamp<std::size_t>(pos, 1, sel.selectors.size());
      p += ln + 1;
      windows.push_back({g, pos, pos, window_literal(solver, sel, pos, pos)});
    }

    while (true) {
      std::vector<Lit> assumptions = length_lits;
      std::map<int, std::size_t> window_of;
      for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& win = windows[w];
        if (win.lo == 1 && win.hi == res.contains[win.group].selectors.size()) continue;
        assumptions.push_back(win.lit);
        window_of[win.lit.code()] = w;
      }
      auto verdict = solver.solve(assumptions);
      ++stats.sat_calls;
      if (verdict.sat) return {decode_model(res, verdict.model), ""};
      if (verdict.core.empty()) return {std::nullopt, "propositional encoding is unsatisfiable"};

      std::vector<std::size_t> cored;
      LengthNogood nogood;
      for (Lit l : verdict.core) {
        if (auto it = window_of.find(l.code()); it != window_of.end()) cored.push_back(it->second);
        if (auto it = length_of.find(l.code()); it != length_of.end()) nogood.push_back(it->second);
      }
      if (cored.empty()) {
        std::sort(nogood.begin(), nogood.end());
        nogood.erase(std::unique(nogood.begin(), nogood.end()), nogood.end());
        blocked.push_back(std::move(nogood));
        break;
      }
      if (++stats.refinement_rounds > opts.max_refinements) {
        fallback = true;
        break;
      }
      for (std::size_t w : cored) {
        Window& win = windows[w];
        const auto& sel = res.contains[win.group];
        widen(win, sel.selectors.size());
        win.lit = window_literal(solver, sel, win.lo, win.hi);
      }
    }
  }

  stats.fallback = true;
  auto v = solver.solve();
  ++stats.sat_calls;
  if (!v.sat) return {std::nullopt, "propositional encoding is unsatisfiable"};
  return {decode_model(res, v.model), ""};
}

}  // namespace

SolveOutcome solve(const Formula& f, const SolverConfig& cfg, const EngineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  auto done = [&](std::optional<Assignment> model, std::string reason) {
    out.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (model) {
      out.verdict = Verdict::Sat;
      out.model = complete_model(f, cfg, *model);
      check_or_throw(f, cfg, out.model);
    } else {
      out.verdict = Verdict::Unsat;
      out.reason = std::move(reason);
    }
    return out;
  };

  check_alphabet(f, cfg.alphabet);
  if (f.is_false) {
    out.stats.early_unsat = true;
    return done(std::nullopt, "formula is false");
  }

  Formula work = f;
  SolverConfig work_cfg = cfg;
  std::optional<SimplifiedFormula> simp;
  auto lift = [&](const Assignment& m) { return simp ? simp->extend(m) : m; };

  if (opts.preprocess) {
    auto pc = propagate_constants(f, cfg);
    if (auto* e = std::get_if<EarlyUnsat>(&pc)) {
      out.stats.early_unsat = true;
      return done(std::nullopt, e->reason);
    }
    simp = std::get<SimplifiedFormula>(std::move(pc));
    work = simp->formula;
    work_cfg = simp->config;

    auto graph = build_containment_graph(work);
    if (auto* e = std::get_if<EarlyUnsat>(&graph)) {
      out.stats.early_unsat = true;
      return done(std::nullopt, e->reason);
    }
    std::set<std::string> present;
    for (const auto& lit : work.literals) present.insert(lit.key());
    for (const auto& [a, b] : std::get<ContainmentGraph>(graph).implied_equalities) {
      Literal eq{true, Atom::eq(a, b)};
      if (present.insert(eq.key()).second) work.literals.push_back(eq);
    }

    if (opts.equality_fast_path) {
      auto eqr = solve_equality_fragment(work, work_cfg);
      if (auto* s = std::get_if<EqualitySat>(&eqr)) {
        out.stats.fast_path = true;
        return done(lift(s->model), "");
      }
      if (auto* u = std::get_if<EqualityUnsat>(&eqr)) {
        out.stats.fast_path = true;
        return done(std::nullopt, u->reason);
      }
    }
  }

  CoreResult r = opts.mode == Mode::Monolithic ? run_monolithic(work, work_cfg, out.stats)
                                               : run_staged(work, work_cfg, opts, out.stats);
  if (r.model) return done(lift(*r.model), "");
  return done(std::nullopt, r.reason);
}

SolveOutcome solve_monolithic(const Formula& f, const SolverConfig& cfg) {
  EngineOptions opts;
  opts.mode = Mode::Monolithic;
  return solve(f, cfg, opts);
}

SolveOutcome solve_staged(const Formula& f, const SolverConfig& cfg) {
  EngineOptions opts;
  opts.mode = Mode::Staged;
  return solve(f, cfg, opts);
}

std::vector<Assignment> enumerate_models(const Formula& f, const SolverConfig& cfg, std::size_t limit) {
  std::vector<Assignment> out;
  check_alphabet(f, cfg.alphabet);
  if (f.is_false || limit == 0) return out;
  sat::Solver solver;
  Encoder enc(cfg, solver);
  EncodeResult res = enc.encode_formula(f);
  while (out.size() < limit) {
    auto v = solver.solve();
    if (!v.sat) break;
    Assignment m = complete_model(f, cfg, decode_model(res, v.model));
    check_or_throw(f, cfg, m);
    out.push_back(std::move(m));
    auto block = blocking_clause(res, v.model);
    if (block.empty()) break;
    solver.add_clause(block);
  }
  return out;
}

}  // namespace strsat
