#include "strsat/strcore.hpp"

#include <algorithm>
#include <set>

namespace strsat {

bool contains_at(std::string_view haystack, std::size_t position, std::string_view needle) {
  if (position < 1) return false;
  if (needle.empty()) return position <= haystack.size() + 1;
  if (haystack.size() < needle.size() + position - 1) return false;
  return haystack.substr(position - 1, needle.size()) == needle;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

std::optional<std::string> eval_term(const Term& t, const Assignment& a, const SolverConfig& cfg) {
  switch (t.kind()) {
    case TermKind::Var: {
      const std::string* v = a.find(t.name());
      if (!v) return std::nullopt;
      return *v;
    }
    case TermKind::Const:
      return t.value();
    case TermKind::Extract: {
      auto base = eval_term(t.base(), a, cfg);
      if (!base || t.to() > base->size()) return std::nullopt;
      return base->substr(t.from() - 1, t.to() - t.from() + 1);
    }
    case TermKind::Concat: {
      auto l = eval_term(t.left(), a, cfg);
      if (!l) return std::nullopt;
      auto r = eval_term(t.right(), a, cfg);
      if (!r || l->size() + r->size() > cfg.l_max) return std::nullopt;
      return *l + *r;
    }
  }
  return std::nullopt;
}

std::optional<bool> eval_atom(const Atom& atom, const Assignment& a, const SolverConfig& cfg) {
  auto lhs = eval_term(atom.lhs, a, cfg);
  if (!lhs) return std::nullopt;
  auto rhs = eval_term(atom.rhs, a, cfg);
  if (!rhs) return std::nullopt;
  switch (atom.kind) {
    case AtomKind::Eq:
      return *lhs == *rhs;
    case AtomKind::Contains:
      return contains(*lhs, *rhs);
    case AtomKind::ContainsAt:
      return contains_at(*lhs, atom.position, *rhs);
  }
  return std::nullopt;
}

bool eval_formula(const Formula& f, const Assignment& a, const SolverConfig& cfg) {
  if (f.is_false) return false;
  // Definedness is checked for every literal before any truth value counts.
  std::vector<bool> truth;
  truth.reserve(f.literals.size());
  for (const auto& lit : f.literals) {
    auto v = eval_atom(lit.atom, a, cfg);
    if (!v) return false;
    truth.push_back(*v);
  }
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != f.literals[i].positive) return false;
  return true;
}

namespace {

// Returns false if the expression folds to the constant false.
bool flatten(const BoolExpr& e, bool positive, bool under_not, std::vector<Literal>& out) {
  switch (e.kind) {
    case BoolExpr::Kind::True:
      return positive;
    case BoolExpr::Kind::False:
      return !positive;
    case BoolExpr::Kind::Not:
      if (e.children.size() != 1) throw FormulaError("negation takes exactly one operand");
      return flatten(e.children[0], !positive, true, out);
    case BoolExpr::Kind::Atom:
      out.push_back(Literal{positive, *e.atom});
      return true;
    case BoolExpr::Kind::And: {
      if (under_not) throw FormulaError("negation of a conjunction is not supported");
      bool ok = true;
      for (const auto& c : e.children) ok = flatten(c, true, false, out) && ok;
      return ok;
    }
  }
  return true;
}

}  // namespace

Formula normalize(const BoolExpr& expr) {
  Formula f;
  if (!flatten(expr, true, false, f.literals)) return Formula::falsum();
  return f;
}

BoolExpr to_bool_expr(const Formula& f) {
  if (f.is_false) return BoolExpr::falsity();
  std::vector<BoolExpr> parts;
  for (const auto& lit : f.literals) {
    auto atom = BoolExpr::of(lit.atom);
    parts.push_back(lit.positive ? std::move(atom) : BoolExpr::negate(std::move(atom)));
  }
  return BoolExpr::conj(std::move(parts));
}

std::string FragmentLabel::name() const {
  std::vector<std::string> parts;
  if (eq) parts.emplace_back("E");
  if (contains) parts.emplace_back("C");
  if (contains_at) parts.emplace_back("T");
  if (concat) parts.emplace_back("A");
  if (extract) parts.emplace_back("X");
  if (parts.empty()) return "none";
  if (parts.size() == 1) return parts[0];
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '+';
    out += p;
    if (p == "T" || p == "X") out += "-CONST";
  }
  return out;
}

FragmentLabel classify_fragment(const Formula& f) {
  FragmentLabel label;
  for (const auto& lit : f.literals) {
    if (!lit.positive) label.negation = true;
    switch (lit.atom.kind) {
      case AtomKind::Eq:
        label.eq = true;
        break;
      case AtomKind::Contains:
        label.contains = true;
        break;
      case AtomKind::ContainsAt:
        label.contains_at = true;
        break;
    }
  }
  for_each_subterm(f, [&](const Term& t) {
    if (t.kind() == TermKind::Concat) label.concat = true;
    if (t.kind() == TermKind::Extract) label.extract = true;
  });
  return label;
}

Formula eliminate_equality(const Formula& f) {
  Formula out;
  out.is_false = f.is_false;
  for (const auto& lit : f.literals) {
    if (!lit.positive)
      throw FormulaError("equality elimination requires a negation-free formula");
    if (lit.atom.kind == AtomKind::Eq) {
      out.literals.push_back(Literal{true, Atom::contains(lit.atom.lhs, lit.atom.rhs)});
      out.literals.push_back(Literal{true, Atom::contains(lit.atom.rhs, lit.atom.lhs)});
    } else {
      out.literals.push_back(lit);
    }
  }
  return out;
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_var() && std::find(out.begin(), out.end(), s.name()) == out.end())
      out.push_back(s.name());
  });
  return out;
}

std::vector<std::string> variables_of(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_subterm(f, [&](const Term& t) {
    if (t.is_var() && seen.insert(t.name()).second) out.push_back(t.name());
  });
  return out;
}

std::vector<std::string> model_variables(const Formula& f, const SolverConfig& cfg) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& v : cfg.vars)
    if (seen.insert(v.name).second) out.push_back(v.name);
  for (auto& v : variables_of(f))
    if (seen.insert(v).second) out.push_back(std::move(v));
  return out;
}

ModelCheck validate_model(const Formula& f, const Assignment& a, const SolverConfig& cfg) {
  ModelCheck check;
  const auto vars = variables_of(f);
  check.certificate_size = a.total_chars();
  check.certificate_bound = cfg.l_max * vars.size();

  for (const auto& v : vars) {
    if (!a.contains(v)) {
      check.violation = "variable '" + v + "' is unassigned";
      return check;
    }
  }
  for (const auto& [name, value] : a.entries()) {
    if (value.size() > cfg.bound_of(name)) {
      check.violation = "variable '" + name + "' has length " + std::to_string(value.size()) +
                        " above its bound " + std::to_string(cfg.bound_of(name));
      return check;
    }
    for (char c : value) {
      if (!cfg.alphabet.contains(c)) {
        check.violation = "variable '" + name + "' uses a character outside the alphabet";
        return check;
      }
    }
  }
  if (check.certificate_size > check.certificate_bound) {
    check.violation = "certificate size " + std::to_string(check.certificate_size) +
                      " exceeds " + std::to_string(check.certificate_bound);
    return check;
  }
  if (f.is_false) {
    check.violation = "formula is false";
    return check;
  }
  for (const auto& lit : f.literals) {
    auto v = eval_atom(lit.atom, a, cfg);
    if (!v) {
      check.violation = "undefined term in " + lit.key();
      return check;
    }
    if (*v != lit.positive) {
      check.violation = "violated literal " + lit.key();
      return check;
    }
  }
  check.ok = true;
  return check;
}

void check_alphabet(const Formula& f, const Alphabet& alphabet) {
  for_each_subterm(f, [&](const Term& t) {
    if (!t.is_const()) return;
    for (char c : t.value())
      if (!alphabet.contains(c))
        throw FormulaError(std::string("character '") + c + "' not in alphabet");
  });
}

bool advance_length_lex(std::string& s, const Alphabet& alphabet, std::size_t max_len) {
  const std::string& chars = alphabet.chars();
  for (std::size_t i = s.size(); i-- > 0;) {
    std::size_t code = *alphabet.code(s[i]);
    if (code + 1 < chars.size()) {
      s[i] = chars[code + 1];
      for (std::size_t k = i + 1; k < s.size(); ++k) s[k] = chars[0];
      return true;
    }
  }
  if (s.size() + 1 > max_len) return false;
  s.assign(s.size() + 1, chars[0]);
  return true;
}

std::uint64_t domain_size(const Alphabet& alphabet, std::size_t bound) {
  constexpr std::uint64_t kMax = UINT64_MAX;
  std::uint64_t total = 0, layer = 1;
  for (std::size_t len = 0; len <= bound; ++len) {
    if (total > kMax - layer) return kMax;
    total += layer;
    if (len < bound) {
      if (layer > kMax / alphabet.size()) layer = kMax;
      else layer *= alphabet.size();
    }
  }
  return total;
}

}  // namespace strsat
