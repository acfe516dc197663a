#pragma once

#include <vector>

namespace strsat {

/// Propositional CNF with DIMACS-style signed literals (variables 1..num_vars).
struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool operator==(const CnfInstance&) const = default;
};

/// Truth of the CNF under values[k-1] for variable k.
bool eval_cnf(const CnfInstance& cnf, const std::vector<bool>& values);

/// Exactly three literals per clause, all in range. Repeated variables are allowed.
bool is_3cnf(const CnfInstance& cnf);

}  // namespace strsat
