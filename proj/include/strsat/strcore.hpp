#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strsat/ast.hpp"

namespace strsat {

/// Raised for inputs outside the accepted grammar or violating a documented precondition.
class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// haystack contains needle starting at the 1-based position. An empty needle
/// matches anywhere in 1..|haystack|+1.
bool contains_at(std::string_view haystack, std::size_t position, std::string_view needle);
bool contains(std::string_view haystack, std::string_view needle);

/// Value of a term, or nullopt when a partial function is undefined or a
/// variable is unbound. Concatenations longer than l_max are undefined.
std::optional<std::string> eval_term(const Term& t, const Assignment& a, const SolverConfig& cfg);

/// Strict semantics: every term must be defined, then each literal must hold.
bool eval_formula(const Formula& f, const Assignment& a, const SolverConfig& cfg);

/// Truth of a single atom; nullopt if one of its terms is undefined.
std::optional<bool> eval_atom(const Atom& atom, const Assignment& a, const SolverConfig& cfg);

/// Flattens to a signed-atom conjunction. Negation over a conjunction is rejected.
Formula normalize(const BoolExpr& expr);
BoolExpr to_bool_expr(const Formula& f);

struct FragmentLabel {
  bool eq = false;
  bool contains = false;
  bool contains_at = false;
  bool concat = false;
  bool extract = false;
  bool negation = false;

  /// "E", "C", "T", "E+C", "E+T-CONST", "E+A", "E+X-CONST", "C+A", ...
  /// Positional predicates and extraction take the -CONST suffix when combined
  /// with anything else, since indices are always literals here.
  std::string name() const;

  bool operator==(const FragmentLabel&) const = default;
};

FragmentLabel classify_fragment(const Formula& f);

/// Rewrites each equality into two-way containment. Requires a negation-free formula.
Formula eliminate_equality(const Formula& f);

struct ModelCheck {
  bool ok = false;
  std::string violation;
  std::size_t certificate_size = 0;   // characters in the assignment
  std::size_t certificate_bound = 0;  // l_max times the number of formula variables

  explicit operator bool() const { return ok; }
};

ModelCheck validate_model(const Formula& f, const Assignment& a, const SolverConfig& cfg);

/// Variables of a formula in first-occurrence order.
std::vector<std::string> variables_of(const Formula& f);
std::vector<std::string> variables_of(const Term& t);

/// Declared variables first, then undeclared formula variables in first-occurrence order.
std::vector<std::string> model_variables(const Formula& f, const SolverConfig& cfg);

/// Calls fn on every term and subterm occurring in the formula (pre-order).
template <typename Fn>
void for_each_subterm(const Term& t, Fn&& fn) {
  fn(t);
  switch (t.kind()) {
    case TermKind::Extract:
      for_each_subterm(t.base(), fn);
      break;
    case TermKind::Concat:
      for_each_subterm(t.left(), fn);
      for_each_subterm(t.right(), fn);
      break;
    default:
      break;
  }
}

template <typename Fn>
void for_each_subterm(const Formula& f, Fn&& fn) {
  for (const auto& lit : f.literals) {
    for_each_subterm(lit.atom.lhs, fn);
    for_each_subterm(lit.atom.rhs, fn);
  }
}

/// Steps s to its successor in length-then-lexicographic order over the
/// alphabet. Returns false (leaving s unchanged) when the successor would be
/// longer than max_len.
bool advance_length_lex(std::string& s, const Alphabet& alphabet, std::size_t max_len);

/// Number of strings of length 0..bound, saturating at UINT64_MAX.
std::uint64_t domain_size(const Alphabet& alphabet, std::size_t bound);

/// Throws FormulaError if a constant uses a character outside the alphabet.
void check_alphabet(const Formula& f, const Alphabet& alphabet);

}  // namespace strsat
