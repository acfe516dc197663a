#pragma once

#include <cstdint>
#include <optional>

#include "strsat/ast.hpp"

namespace strsat {

enum class OracleVerdict { Sat, Unsat, BudgetExceeded };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Unsat;
  std::optional<Assignment> first_model;
  std::uint64_t models_checked = 0;
  std::optional<std::uint64_t> model_count;  // set when counting all models
};

/// Number of assignments to the formula's variables, saturating.
std::uint64_t assignment_space(const Formula& f, const SolverConfig& cfg);

/// Exhaustive check over every assignment to the formula's variables. Each
/// variable ranges over its strings in length-then-lexicographic order and the
/// last variable varies fastest, so the first model is order-minimal.
OracleResult enumerate_sat(const Formula& f, const SolverConfig& cfg, bool count_all = false);

}  // namespace strsat
