#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace strsat {

/// Ordered set of distinct characters. The position of a character is its code.
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::string chars);

  const std::string& chars() const { return chars_; }
  std::size_t size() const { return chars_.size(); }
  bool contains(char c) const { return chars_.find(c) != std::string::npos; }
  std::optional<std::size_t> code(char c) const;
  char at(std::size_t code) const { return chars_.at(code); }

  /// Number of bits needed to hold a character code (0 for a singleton alphabet).
  std::size_t bits() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string chars_;
};

struct VarDecl {
  std::string name;
  std::optional<std::size_t> bound;  // unset means l_max

  bool operator==(const VarDecl&) const = default;
};

struct SolverConfig {
  Alphabet alphabet;
  std::size_t l_max = 8;
  std::vector<VarDecl> vars;  // declaration order
  std::uint64_t seed = 0;
  std::uint64_t oracle_budget = 2'000'000;

  const VarDecl* find(std::string_view name) const;
  /// Effective length bound of a variable: its declared bound capped by l_max.
  std::size_t bound_of(std::string_view name) const;
  /// Throws std::invalid_argument on a duplicate name or a bound above l_max.
  void declare(std::string name, std::optional<std::size_t> bound = std::nullopt);
  void set_bound(std::string_view name, std::size_t bound);
};

enum class TermKind { Var, Const, Extract, Concat };

/// Immutable, structurally shared string term.
class Term {
 public:
  /// The empty constant.
  Term();

  static Term var(std::string name);
  static Term constant(std::string value);
  /// 1-based inclusive extraction; requires 1 <= from <= to.
  static Term extract(Term base, std::size_t from, std::size_t to);
  static Term concat(Term left, Term right);

  TermKind kind() const { return node_->kind; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_const() const { return kind() == TermKind::Const; }

  const std::string& name() const;   // Var
  const std::string& value() const;  // Const
  const Term& base() const;          // Extract
  std::size_t from() const;          // Extract
  std::size_t to() const;            // Extract
  const Term& left() const;          // Concat
  const Term& right() const;         // Concat

  /// Canonical text of the term; equal keys mean structurally equal terms.
  const std::string& key() const { return node_->key; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.node_ == b.node_ || a.key() == b.key();
  }

 private:
  struct Node {
    TermKind kind;
    std::string text;
    std::size_t from = 0;
    std::size_t to = 0;
    std::vector<Term> children;
    std::string key;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Quotes a character sequence the way `.strf` writes string literals.
std::string quote(std::string_view chars);

enum class AtomKind { Eq, Contains, ContainsAt };

struct Atom {
  AtomKind kind = AtomKind::Eq;
  Term lhs;
  Term rhs;
  std::size_t position = 0;  // ContainsAt only, 1-based

  static Atom eq(Term a, Term b);
  static Atom contains(Term haystack, Term needle);
  static Atom contains_at(Term haystack, std::size_t position, Term needle);

  std::string key() const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && a.position == b.position && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct Literal {
  bool positive = true;
  Atom atom;

  std::string key() const;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Conjunction of signed atoms. An empty conjunction is true.
struct Formula {
  std::vector<Literal> literals;
  bool is_false = false;

  static Formula falsum() { return Formula{{}, true}; }
  bool is_true() const { return !is_false && literals.empty(); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Unnormalized boolean expression, as written in source.
struct BoolExpr {
  enum class Kind { True, False, Not, Atom, And };

  Kind kind = Kind::True;
  std::optional<strsat::Atom> atom;
  std::vector<BoolExpr> children;

  static BoolExpr truth() { return {Kind::True, std::nullopt, {}}; }
  static BoolExpr falsity() { return {Kind::False, std::nullopt, {}}; }
  static BoolExpr negate(BoolExpr e) { return {Kind::Not, std::nullopt, {std::move(e)}}; }
  static BoolExpr of(strsat::Atom a) { return {Kind::Atom, std::move(a), {}}; }
  static BoolExpr conj(std::vector<BoolExpr> parts) { return {Kind::And, std::nullopt, std::move(parts)}; }
};

/// Variable-to-string mapping that remembers insertion order.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<std::string, std::string>> init);

  void set(std::string name, std::string value);
  const std::string* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t total_chars() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace strsat
