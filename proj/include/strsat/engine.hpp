#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "strsat/ast.hpp"

namespace strsat {

enum class Mode { Monolithic, Staged };
enum class Verdict { Sat, Unsat };

struct EngineOptions {
  Mode mode = Mode::Monolithic;
  bool preprocess = true;
  bool equality_fast_path = true;
  std::size_t max_length_candidates = 64;
  std::size_t max_refinements = 256;
  std::size_t length_node_limit = 200000;
};

struct SolveStats {
  std::size_t sat_calls = 0;
  std::size_t refinement_rounds = 0;
  std::size_t candidates_tried = 0;
  double wall_time = 0;  // seconds
  bool early_unsat = false;
  bool abstract_unsat = false;
  bool fast_path = false;
  bool fallback = false;
};

struct SolveOutcome {
  Verdict verdict = Verdict::Unsat;
  Assignment model;  // declared variables first, then formula variables
  SolveStats stats;
  std::string reason;  // short note on how UNSAT was reached

  bool sat() const { return verdict == Verdict::Sat; }
};

/// Decides the formula. Every SAT model is checked against the original
/// formula; a model that fails the check raises std::logic_error.
SolveOutcome solve(const Formula& f, const SolverConfig& cfg, const EngineOptions& opts = {});

SolveOutcome solve_monolithic(const Formula& f, const SolverConfig& cfg);
SolveOutcome solve_staged(const Formula& f, const SolverConfig& cfg);

/// Up to `limit` distinct models, differing on the formula's variables.
std::vector<Assignment> enumerate_models(const Formula& f, const SolverConfig& cfg, std::size_t limit);

}  // namespace strsat
