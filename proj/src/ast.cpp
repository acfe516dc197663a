#include "strsat/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace strsat {

Alphabet::Alphabet() : chars_("ab") {}

Alphabet::Alphabet(std::string chars) : chars_(std::move(chars)) {
  if (chars_.empty()) throw std::invalid_argument("alphabet must not be empty");
  std::string sorted = chars_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("alphabet has duplicate characters");
}

std::optional<std::size_t> Alphabet::code(char c) const {
  auto pos = chars_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return pos;
}

std::size_t Alphabet::bits() const {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < chars_.size()) ++bits;
  return bits;
}

const VarDecl* SolverConfig::find(std::string_view name) const {
  for (const auto& v : vars)
    if (v.name == name) return &v;
  return nullptr;
}

std::size_t SolverConfig::bound_of(std::string_view name) const {
  const VarDecl* decl = find(name);
  if (decl && decl->bound) return std::min(*decl->bound, l_max);
  return l_max;
}

void SolverConfig::declare(std::string name, std::optional<std::size_t> bound) {
  if (find(name)) throw std::invalid_argument("variable '" + name + "' declared twice");
  if (bound && *bound > l_max)
    throw std::invalid_argument("bound of '" + name + "' exceeds the maximum length");
  vars.push_back({std::move(name), bound});
}

void SolverConfig::set_bound(std::string_view name, std::size_t bound) {
  for (auto& v : vars) {
    if (v.name == name) {
      v.bound = bound;
      return;
    }
  }
  vars.push_back({std::string(name), bound});
}

std::string quote(std::string_view chars) {
  std::string out = "\"";
  for (char c : chars) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

Term::Term() : Term(Term::constant("")) {}

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Var;
  node->key = name;
  node->text = std::move(name);
  return Term(std::move(node));
}

Term Term::constant(std::string value) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Const;
  node->key = quote(value);
  node->text = std::move(value);
  return Term(std::move(node));
}

Term Term::extract(Term base, std::size_t from, std::size_t to) {
  if (from < 1) throw std::invalid_argument("extract start must be >= 1");
  if (from > to) throw std::invalid_argument("extract start must not exceed its end");
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Extract;
  node->from = from;
  node->to = to;
  node->key = "(extract " + base.key() + " " + std::to_string(from) + " " + std::to_string(to) + ")";
  node->children.push_back(std::move(base));
  return Term(std::move(node));
}

Term Term::concat(Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Concat;
  node->key = "(concat " + left.key() + " " + right.key() + ")";
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return Term(std::move(node));
}

namespace {
void expect(const Term& t, TermKind kind) {
  if (t.kind() != kind) throw std::logic_error("term accessor used on the wrong kind: " + t.key());
}
}  // namespace

const std::string& Term::name() const {
  expect(*this, TermKind::Var);
  return node_->text;
}
const std::string& Term::value() const {
  expect(*this, TermKind::Const);
  return node_->text;
}
const Term& Term::base() const {
  expect(*this, TermKind::Extract);
  return node_->children[0];
}
std::size_t Term::from() const {
  expect(*this, TermKind::Extract);
  return node_->from;
}
std::size_t Term::to() const {
  expect(*this, TermKind::Extract);
  return node_->to;
}
const Term& Term::left() const {
  expect(*this, TermKind::Concat);
  return node_->children[0];
}
const Term& Term::right() const {
  expect(*this, TermKind::Concat);
  return node_->children[1];
}

Atom Atom::eq(Term a, Term b) { return Atom{AtomKind::Eq, std::move(a), std::move(b), 0}; }

Atom Atom::contains(Term haystack, Term needle) {
  return Atom{AtomKind::Contains, std::move(haystack), std::move(needle), 0};
}

Atom Atom::contains_at(Term haystack, std::size_t position, Term needle) {
  if (position < 1) throw std::invalid_argument("index must be ≥ 1");
  return Atom{AtomKind::ContainsAt, std::move(haystack), std::move(needle), position};
}

std::string Atom::key() const {
  switch (kind) {
    case AtomKind::Eq:
      return "(= " + lhs.key() + " " + rhs.key() + ")";
    case AtomKind::Contains:
      return "(contains " + lhs.key() + " " + rhs.key() + ")";
    case AtomKind::ContainsAt:
      return "(contains-at " + lhs.key() + " " + std::to_string(position) + " " + rhs.key() + ")";
  }
  return {};
}

std::string Literal::key() const {
  return positive ? atom.key() : "(not " + atom.key() + ")";
}

Assignment::Assignment(std::initializer_list<std::pair<std::string, std::string>> init) {
  for (const auto& [name, value] : init) set(name, value);
}

void Assignment::set(std::string name, std::string value) {
  for (auto& entry : entries_) {
    if (entry.first == name) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(name), std::move(value));
}

const std::string* Assignment::find(std::string_view name) const {
  for (const auto& entry : entries_)
    if (entry.first == name) return &entry.second;
  return nullptr;
}

std::size_t Assignment::total_chars() const {
  std::size_t total = 0;
  for (const auto& entry : entries_) total += entry.second.size();
  return total;
}

}  // namespace strsat
