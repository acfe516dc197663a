#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strsat/ast.hpp"
#include "strsat/cnf.hpp"
#include "strsat/engine.hpp"

namespace strsat {

/// Target fragments of the 3-CNF-SAT encoders.
enum class Fragment { EC, ETConst, EA, EXConst, C, T };
enum class ReductionMode { Verbatim, Repaired };

inline constexpr Fragment kAllFragments[] = {Fragment::EC, Fragment::ETConst, Fragment::EA,
                                             Fragment::EXConst, Fragment::C, Fragment::T};

/// Command-line spelling: ec, etconst, ea, exconst, c, t.
std::optional<Fragment> parse_fragment(std::string_view name);
std::string fragment_flag(Fragment f);
/// The classify_fragment name every output of this encoder carries.
std::string fragment_label(Fragment f);

struct ReductionOutput {
  Fragment fragment = Fragment::EC;
  ReductionMode mode = ReductionMode::Verbatim;
  Formula formula;
  SolverConfig config;
  std::vector<std::pair<std::string, std::string>> var_map;  // x_k -> (s_k, r_k)
  std::vector<std::string> clause_vars;                     // V_c, or p_c for EA
};

/// Encodes a 3-CNF formula. Clauses may repeat literals. The mode only
/// affects the T fragment. Throws std::invalid_argument on other input.
ReductionOutput reduce(Fragment fragment, const CnfInstance& phi, ReductionMode mode = ReductionMode::Verbatim);

/// String assignment built from a satisfying Boolean assignment (values[k-1] is x_k).
/// Throws std::invalid_argument if the assignment does not satisfy phi.
Assignment witness_forward(Fragment fragment, const CnfInstance& phi, const std::vector<bool>& values,
                           ReductionMode mode = ReductionMode::Verbatim);

/// x_k is true iff s_k = "a".
std::vector<bool> decode_bool(const ReductionOutput& out, const Assignment& a);

struct EquisatReport {
  bool phi_sat = false;
  bool psi_sat = false;
  std::optional<bool> decoded_ok;  // set when psi is satisfiable
  bool forward_ok = true;          // witness of a phi model satisfies psi
  std::optional<std::string> counterexample;
  std::optional<Assignment> psi_model;
};

EquisatReport verify_equisat(Fragment fragment, const CnfInstance& phi, ReductionMode mode = ReductionMode::Verbatim,
                             const EngineOptions& opts = {});

/// Smallest formula (fewest variables, then clauses, then clause order) on
/// which phi is unsatisfiable while its encoding is satisfiable.
std::optional<CnfInstance> minimal_backward_counterexample(Fragment fragment, ReductionMode mode,
                                                           int max_vars = 2, int max_clauses = 3);

/// m clauses over three distinct variables each, uniform polarities. Requires n >= 3.
CnfInstance gen_random_3cnf(int n, int m, std::uint64_t seed);

/// m clauses of three literals drawn independently, so repeats are allowed. Requires n >= 1.
CnfInstance gen_random_3cnf_with_repeats(int n, int m, std::uint64_t seed);

}  // namespace strsat
