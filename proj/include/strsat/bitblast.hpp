#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strsat/ast.hpp"
#include "strsat/sat_solver.hpp"

namespace strsat {

/// Propositional image of a bounded string term.
///
/// Lengths are order-encoded: len_ge[k-1] holds iff the length is at least k.
/// Characters are binary codes into the alphabet, one literal per bit, and
/// every cell past the length carries code 0.
struct TermLayout {
  std::size_t bound = 0;
  std::vector<sat::Lit> len_ge;
  std::vector<std::vector<sat::Lit>> cells;
};

/// Position selectors of one positive containment literal.
struct ContainsSelectors {
  std::size_t literal_index = 0;
  std::size_t haystack_bound = 0;
  std::vector<sat::Lit> selectors;  // selectors[i-1]: needle placed at position i
};

struct EncodeResult {
  sat::Lit top;  // constant true
  Alphabet alphabet;
  std::vector<std::string> var_order;  // first occurrence
  std::map<std::string, TermLayout> vars;
  std::vector<sat::Lit> atom_literals;  // reified truth of each formula literal's atom
  std::vector<ContainsSelectors> contains;
  std::vector<sat::Lit> guards;  // definedness of every compound term, asserted

  /// Literal for "length of layout >= k"; constant outside 1..bound.
  sat::Lit length_at_least(const TermLayout& layout, std::size_t k) const;
};

/// Streams the CNF image of terms and formulas into one solver.
class Encoder {
 public:
  Encoder(const SolverConfig& cfg, sat::Solver& solver);

  /// Layout of a term; structurally equal terms share one layout.
  const TermLayout& encode_term(const Term& t);

  /// Encodes every literal with its polarity plus all definedness guards.
  EncodeResult encode_formula(const Formula& f);

  /// Definedness literal of a compound term, if one was created.
  std::optional<sat::Lit> guard_of(const Term& t) const;

  sat::Lit top() const { return top_; }

 private:
  sat::Lit fresh() { return sat::Lit(solver_.new_var()); }
  sat::Lit constant(bool b) const { return b ? top_ : ~top_; }
  bool is_true(sat::Lit l) const { return l == top_; }
  bool is_false(sat::Lit l) const { return l == ~top_; }

  void clause(std::vector<sat::Lit> lits);
  sat::Lit gate_and(std::vector<sat::Lit> lits);
  sat::Lit gate_or(std::vector<sat::Lit> lits);
  sat::Lit gate_xnor(sat::Lit a, sat::Lit b);

  sat::Lit ge(const TermLayout& t, std::size_t k) const;
  sat::Lit cell(const TermLayout& t, std::size_t k, std::size_t bit) const;
  sat::Lit cells_equal(const TermLayout& a, std::size_t ka, const TermLayout& b, std::size_t kb);

  TermLayout fresh_layout(std::size_t bound);
  TermLayout constant_layout(const std::string& value);
  TermLayout extract_layout(const Term& t);
  TermLayout concat_layout(const Term& t);

  sat::Lit encode_atom(const Atom& atom);
  sat::Lit encode_eq(const TermLayout& a, const TermLayout& b);
  sat::Lit encode_contains_at(const TermLayout& a, std::size_t position, const TermLayout& b);

  const SolverConfig& cfg_;
  sat::Solver& solver_;
  sat::Lit top_;
  std::size_t bits_;
  std::map<std::string, TermLayout> layouts_;
  std::map<std::string, sat::Lit> guards_;
  std::map<std::string, sat::Lit> atoms_;
  std::map<std::string, std::vector<sat::Lit>> positions_;  // per Contains atom key
};

/// Reads variable values out of a SAT model. Lengths must be monotone.
Assignment decode_model(const EncodeResult& res, const std::vector<bool>& model);

/// Assumptions that pin every encoded variable to its value in the assignment
/// (missing variables pinned to the empty string). nullopt if a value cannot
/// be represented within the layout.
std::optional<std::vector<sat::Lit>> pin_assumptions(const EncodeResult& res, const Assignment& a);

/// Clause excluding the variable values of the given model.
std::vector<sat::Lit> blocking_clause(const EncodeResult& res, const std::vector<bool>& model);

}  // namespace strsat
