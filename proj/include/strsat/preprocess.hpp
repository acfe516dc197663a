#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strsat/ast.hpp"

namespace strsat {

/// Proof that a formula is unsatisfiable found without search.
struct EarlyUnsat {
  std::optional<Literal> first;
  std::optional<Literal> second;
  std::string reason;
};

struct SimplifiedFormula {
  Formula formula;
  SolverConfig config;  // representatives carry the tightest bound of their class
  std::vector<std::pair<std::string, Term>> substitution;  // eliminated variable -> replacement

  /// Lifts a model of the simplified formula to the eliminated variables.
  Assignment extend(const Assignment& a) const;
};

/// Pins and merges variables using positive equalities and positional
/// containment of constants, then folds every ground literal.
std::variant<SimplifiedFormula, EarlyUnsat> propagate_constants(const Formula& f, const SolverConfig& cfg);

struct ContainmentGraph {
  std::vector<Term> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // needle -> haystack
  std::vector<std::size_t> component;                       // node -> SCC id
  std::size_t num_components = 0;
  std::vector<std::vector<bool>> reach;  // over SCC ids, reflexive and transitive
  std::vector<std::pair<Term, Term>> implied_equalities;

  std::optional<std::size_t> index_of(const Term& t) const;
  /// Whether `to` contains `from` by the closure.
  bool reaches(const Term& from, const Term& to) const;
};

/// Positive Eq literals contribute edges in both directions.
std::variant<ContainmentGraph, EarlyUnsat> build_containment_graph(const Formula& f);

struct EqualitySat {
  Assignment model;
};
struct EqualityUnsat {
  std::string reason;
};
struct EqualityInapplicable {
  std::string reason;
};
using EqualityResult = std::variant<EqualitySat, EqualityUnsat, EqualityInapplicable>;

/// Congruence-closure decision for formulas made only of equalities between
/// variables and constants.
EqualityResult solve_equality_fragment(const Formula& f, const SolverConfig& cfg);

struct LengthConstraint {
  enum class Kind {
    Equal,         // l(a) = l(b)
    Sum,           // l(a) = l(b) + l(c)
    Fixed,         // l(a) = value
    AtLeast,       // l(a) >= value
    ContainsLen,   // l(a) >= l(b)
    ContainsAtLen  // l(a) >= l(b) + value - 1
  };
  Kind kind;
  std::size_t a = 0, b = 0, c = 0;
  std::size_t value = 0;
};

struct LengthSystem {
  std::vector<Term> terms;
  std::vector<std::size_t> upper;
  std::vector<LengthConstraint> constraints;
  std::map<std::string, std::size_t> index;  // term key -> position in terms

  std::optional<std::size_t> index_of(const Term& t) const;
  bool satisfied_by(const std::vector<std::size_t>& lengths) const;
};

LengthSystem derive_length_constraints(const Formula& f, const SolverConfig& cfg);

/// Partial length assignment ruled out by a refutation: (term index, length) pairs.
using LengthNogood = std::vector<std::pair<std::size_t, std::size_t>>;

struct LengthResult {
  enum class Status { Candidate, AbstractUnsat, LimitReached };
  Status status = Status::AbstractUnsat;
  std::vector<std::size_t> lengths;
  std::size_t nodes = 0;
};

/// Interval propagation plus depth-first search. Variables are branched on
/// first, in term order, trying larger lengths before smaller ones.
LengthResult solve_lengths(const LengthSystem& sys, std::span<const LengthNogood> blocked,
                           std::size_t node_limit = 200000);

}  // namespace strsat
