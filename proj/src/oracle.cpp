#include "strsat/oracle.hpp"

#include <string>
#include <vector>

#include "strsat/strcore.hpp"

namespace strsat {

std::uint64_t assignment_space(const Formula& f, const SolverConfig& cfg) {
  std::uint64_t total = 1;
  for (const auto& name : variables_of(f)) {
    std::uint64_t d = domain_size(cfg.alphabet, cfg.bound_of(name));
    if (d != 0 && total > UINT64_MAX / d) return UINT64_MAX;
    total *= d;
  }
  return total;
}

OracleResult enumerate_sat(const Formula& f, const SolverConfig& cfg, bool count_all) {
  OracleResult res;
  if (assignment_space(f, cfg) > cfg.oracle_budget) {
    res.verdict = OracleVerdict::BudgetExceeded;
    return res;
  }
  const std::vector<std::string> names = variables_of(f);
  std::vector<std::size_t> bounds;
  for (const auto& n : names) bounds.push_back(cfg.bound_of(n));
  std::vector<std::string> values(names.size());
  std::uint64_t count = 0;

  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) a.set(names[i], values[i]);
    ++res.models_checked;
    if (eval_formula(f, a, cfg)) {
      ++count;
      if (!res.first_model) res.first_model = a;
      if (!count_all) break;
    }
    std::size_t i = names.size();
    while (i > 0 && !advance_length_lex(values[i - 1], cfg.alphabet, bounds[i - 1])) values[--i].clear();
    if (i == 0) break;
  }

  res.verdict = res.first_model ? OracleVerdict::Sat : OracleVerdict::Unsat;
  if (count_all) res.model_count = count;
  return res;
}

}  // namespace strsat
