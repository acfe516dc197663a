#include "strsat/bitblast.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "strsat/strcore.hpp"

namespace strsat {

using sat::Lit;

sat::Lit EncodeResult::length_at_least(const TermLayout& layout, std::size_t k) const {
  if (k == 0) return top;
  if (k > layout.bound) return ~top;
  return layout.len_ge[k - 1];
}

Encoder::Encoder(const SolverConfig& cfg, sat::Solver& solver)
    : cfg_(cfg), solver_(solver), top_(sat::Lit(solver.new_var())), bits_(cfg.alphabet.bits()) {
  solver_.add_clause({top_});
}

void Encoder::clause(std::vector<Lit> lits) {
  std::vector<Lit> kept;
  kept.reserve(lits.size());
  for (Lit l : lits) {
    if (is_true(l)) return;
    if (!is_false(l)) kept.push_back(l);
  }
  solver_.add_clause(kept);
}

Lit Encoder::gate_and(std::vector<Lit> lits) {
  std::vector<Lit> kept;
  for (Lit l : lits) {
    if (is_false(l)) return constant(false);
    if (!is_true(l)) kept.push_back(l);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (std::size_t i = 0; i + 1 < kept.size(); ++i)
    if (kept[i + 1] == ~kept[i]) return constant(false);
  if (kept.empty()) return constant(true);
  if (kept.size() == 1) return kept[0];
  Lit g = fresh();
  std::vector<Lit> big{g};
  for (Lit l : kept) {
    solver_.add_clause({~g, l});
    big.push_back(~l);
  }
  solver_.add_clause(big);
  return g;
}

Lit Encoder::gate_or(std::vector<Lit> lits) {
  for (Lit& l : lits) l = ~l;
  return ~gate_and(std::move(lits));
}

Lit Encoder::gate_xnor(Lit a, Lit b) {
  if (a == b) return constant(true);
  if (a == ~b) return constant(false);
  if (is_true(a)) return b;
  if (is_false(a)) return ~b;
  if (is_true(b)) return a;
  if (is_false(b)) return ~a;
  Lit g = fresh();
  solver_.add_clause({~g, ~a, b});
  solver_.add_clause({~g, a, ~b});
  solver_.add_clause({g, a, b});
  solver_.add_clause({g, ~a, ~b});
  return g;
}

Lit Encoder::ge(const TermLayout& t, std::size_t k) const {
  if (k == 0) return constant(true);
  if (k > t.bound) return constant(false);
  return t.len_ge[k - 1];
}

Lit Encoder::cell(const TermLayout& t, std::size_t k, std::size_t bit) const {
  if (k < 1 || k > t.bound) return constant(false);
  return t.cells[k - 1][bit];
}

Lit Encoder::cells_equal(const TermLayout& a, std::size_t ka, const TermLayout& b, std::size_t kb) {
  std::vector<Lit> parts;
  for (std::size_t bit = 0; bit < bits_; ++bit) parts.push_back(gate_xnor(cell(a, ka, bit), cell(b, kb, bit)));
  return gate_and(std::move(parts));
}

TermLayout Encoder::fresh_layout(std::size_t bound) {
  TermLayout t;
  t.bound = bound;
  for (std::size_t k = 0; k < bound; ++k) {
    t.len_ge.push_back(fresh());
    std::vector<Lit> bits;
    for (std::size_t b = 0; b < bits_; ++b) bits.push_back(fresh());
    t.cells.push_back(std::move(bits));
  }
  const std::size_t codes = std::size_t{1} << bits_;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (k > 1) clause({~ge(t, k), ge(t, k - 1)});
    for (std::size_t b = 0; b < bits_; ++b) clause({ge(t, k), ~cell(t, k, b)});
    for (std::size_t code = cfg_.alphabet.size(); code < codes; ++code) {
      std::vector<Lit> block;
      for (std::size_t b = 0; b < bits_; ++b) block.push_back(((code >> b) & 1) ? ~cell(t, k, b) : cell(t, k, b));
      clause(std::move(block));
    }
  }
  return t;
}

TermLayout Encoder::constant_layout(const std::string& value) {
  TermLayout t;
  t.bound = value.size();
  for (char c : value) {
    auto code = cfg_.alphabet.code(c);
    if (!code) throw std::invalid_argument(std::string("character '") + c + "' not in alphabet");
    t.len_ge.push_back(constant(true));
    std::vector<Lit> bits;
    for (std::size_t b = 0; b < bits_; ++b) bits.push_back(constant(((*code >> b) & 1) != 0));
    t.cells.push_back(std::move(bits));
  }
  return t;
}

TermLayout Encoder::extract_layout(const Term& t) {
  const TermLayout parent = encode_term(t.base());
  guards_[t.key()] = ge(parent, t.to());
  TermLayout out;
  out.bound = t.to() - t.from() + 1;
  for (std::size_t k = 1; k <= out.bound; ++k) {
    out.len_ge.push_back(constant(true));
    std::vector<Lit> bits;
    for (std::size_t b = 0; b < bits_; ++b) bits.push_back(cell(parent, t.from() + k - 1, b));
    out.cells.push_back(std::move(bits));
  }
  return out;
}

TermLayout Encoder::concat_layout(const Term& t) {
  const TermLayout a = encode_term(t.left());
  const TermLayout b = encode_term(t.right());
  TermLayout c = fresh_layout(std::min(cfg_.l_max, a.bound + b.bound));

  Lit guard = constant(true);
  if (a.bound + b.bound > c.bound) guard = fresh();
  guards_[t.key()] = guard;

  // Length table over all (|a|, |b|) pairs.
  for (std::size_t la = 0; la <= a.bound; ++la) {
    for (std::size_t lb = 0; lb <= b.bound; ++lb) {
      std::vector<Lit> pair{~ge(a, la), ge(a, la + 1), ~ge(b, lb), ge(b, lb + 1)};
      if (la + lb > c.bound) {
        auto cl = pair;
        cl.push_back(~guard);
        clause(std::move(cl));
        continue;
      }
      auto lo = pair;
      lo.push_back(ge(c, la + lb));
      clause(std::move(lo));
      auto hi = pair;
      hi.push_back(~ge(c, la + lb + 1));
      clause(std::move(hi));
    }
  }
  // Prefix cells come from the left operand.
  for (std::size_t k = 1; k <= std::min(a.bound, c.bound); ++k) {
    for (std::size_t bit = 0; bit < bits_; ++bit) {
      clause({~ge(a, k), ~cell(a, k, bit), cell(c, k, bit)});
      clause({~ge(a, k), cell(a, k, bit), ~cell(c, k, bit)});
    }
  }
  // The right operand is shifted by |a|.
  for (std::size_t la = 0; la <= a.bound; ++la) {
    for (std::size_t k = 1; k <= b.bound && la + k <= c.bound; ++k) {
      for (std::size_t bit = 0; bit < bits_; ++bit) {
        clause({~ge(a, la), ge(a, la + 1), ~cell(b, k, bit), cell(c, la + k, bit)});
        clause({~ge(a, la), ge(a, la + 1), cell(b, k, bit), ~cell(c, la + k, bit)});
      }
    }
  }
  return c;
}

const TermLayout& Encoder::encode_term(const Term& t) {
  if (auto it = layouts_.find(t.key()); it != layouts_.end()) return it->second;
  TermLayout layout;
  switch (t.kind()) {
    case TermKind::Var:
      layout = fresh_layout(cfg_.bound_of(t.name()));
      break;
    case TermKind::Const:
      layout = constant_layout(t.value());
      break;
    case TermKind::Extract:
      layout = extract_layout(t);
      break;
    case TermKind::Concat:
      layout = concat_layout(t);
      break;
  }
  return layouts_.emplace(t.key(), std::move(layout)).first->second;
}

std::optional<Lit> Encoder::guard_of(const Term& t) const {
  if (auto it = guards_.find(t.key()); it != guards_.end()) return it->second;
  return std::nullopt;
}

Lit Encoder::encode_eq(const TermLayout& a, const TermLayout& b) {
  std::vector<Lit> parts;
  for (std::size_t k = 1; k <= std::max(a.bound, b.bound); ++k) parts.push_back(gate_xnor(ge(a, k), ge(b, k)));
  for (std::size_t k = 1; k <= std::min(a.bound, b.bound); ++k) parts.push_back(cells_equal(a, k, b, k));
  return gate_and(std::move(parts));
}

Lit Encoder::encode_contains_at(const TermLayout& a, std::size_t position, const TermLayout& b) {
  // |b| = 0 needs |a| >= position-1; |b| >= 1 needs the match, which implies it.
  std::vector<Lit> parts{ge(a, position - 1)};
  for (std::size_t k = 1; k <= b.bound; ++k) {
    std::size_t at = position + k - 1;
    Lit match = gate_and({ge(a, at), cells_equal(a, at, b, k)});
    parts.push_back(gate_or({~ge(b, k), match}));
  }
  return gate_and(std::move(parts));
}

Lit Encoder::encode_atom(const Atom& atom) {
  const std::string key = atom.key();
  if (auto it = atoms_.find(key); it != atoms_.end()) return it->second;
  const TermLayout a = encode_term(atom.lhs);
  const TermLayout b = encode_term(atom.rhs);
  Lit g;
  switch (atom.kind) {
    case AtomKind::Eq:
      g = encode_eq(a, b);
      break;
    case AtomKind::ContainsAt:
      g = encode_contains_at(a, atom.position, b);
      break;
    case AtomKind::Contains: {
      std::vector<Lit> positions;
      for (std::size_t i = 1; i <= a.bound + 1; ++i) positions.push_back(encode_contains_at(a, i, b));
      g = gate_or(positions);
      positions_[key] = std::move(positions);
      break;
    }
  }
  atoms_[key] = g;
  return g;
}

EncodeResult Encoder::encode_formula(const Formula& f) {
  EncodeResult res;
  res.top = top_;
  res.alphabet = cfg_.alphabet;
  if (f.is_false) solver_.add_clause(std::span<const Lit>{});

  for (std::size_t idx = 0; idx < f.literals.size(); ++idx) {
    const Literal& lit = f.literals[idx];
    Lit g = encode_atom(lit.atom);
    res.atom_literals.push_back(g);
    clause({lit.positive ? g : ~g});
    if (!lit.positive || lit.atom.kind != AtomKind::Contains) continue;

    const auto& positions = positions_.at(lit.atom.key());
    ContainsSelectors sel;
    sel.literal_index = idx;
    sel.haystack_bound = positions.size() - 1;
    std::vector<Lit> some{~g};
    for (Lit h : positions) {
      Lit s = fresh();
      clause({~s, h});
      for (Lit prev : sel.selectors) clause({~s, ~prev});
      sel.selectors.push_back(s);
      some.push_back(s);
    }
    clause(std::move(some));
    res.contains.push_back(std::move(sel));
  }

  std::set<std::string> seen;
  for_each_subterm(f, [&](const Term& t) {
    if (t.kind() != TermKind::Extract && t.kind() != TermKind::Concat) return;
    if (!seen.insert(t.key()).second) return;
    Lit g = *guard_of(t);
    res.guards.push_back(g);
    clause({g});
  });

  for (const auto& name : variables_of(f)) {
    res.var_order.push_back(name);
    res.vars[name] = layouts_.at(name);
  }
  return res;
}

Assignment decode_model(const EncodeResult& res, const std::vector<bool>& model) {
  auto value = [&](Lit l) { return model.at(static_cast<std::size_t>(l.var())) != l.negative(); };
  Assignment out;
  for (const auto& name : res.var_order) {
    const TermLayout& t = res.vars.at(name);
    std::size_t len = 0;
    for (std::size_t k = 0; k < t.bound; ++k) {
      if (value(t.len_ge[k])) {
        if (len != k) throw std::logic_error("non-monotone length bits for '" + name + "'");
        len = k + 1;
      }
    }
    std::string s;
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t code = 0;
      for (std::size_t b = 0; b < t.cells[k].size(); ++b)
        if (value(t.cells[k][b])) code |= std::size_t{1} << b;
      if (code >= res.alphabet.size()) throw std::logic_error("invalid character code for '" + name + "'");
      s += res.alphabet.at(code);
    }
    out.set(name, std::move(s));
  }
  return out;
}

std::optional<std::vector<Lit>> pin_assumptions(const EncodeResult& res, const Assignment& a) {
  std::vector<Lit> out;
  for (const auto& name : res.var_order) {
    const TermLayout& t = res.vars.at(name);
    const std::string* v = a.find(name);
    const std::string value = v ? *v : std::string();
    if (value.size() > t.bound) return std::nullopt;
    for (std::size_t k = 1; k <= t.bound; ++k) out.push_back(k <= value.size() ? t.len_ge[k - 1] : ~t.len_ge[k - 1]);
    for (std::size_t k = 0; k < value.size(); ++k) {
      auto code = res.alphabet.code(value[k]);
      if (!code) return std::nullopt;
      for (std::size_t b = 0; b < t.cells[k].size(); ++b)
        out.push_back(((*code >> b) & 1) ? t.cells[k][b] : ~t.cells[k][b]);
    }
  }
  return out;
}

std::vector<Lit> blocking_clause(const EncodeResult& res, const std::vector<bool>& model) {
  std::vector<Lit> out;
  auto add = [&](Lit l) {
    bool v = model.at(static_cast<std::size_t>(l.var())) != l.negative();
    out.push_back(v ? ~l : l);
  };
  for (const auto& name : res.var_order) {
    const TermLayout& t = res.vars.at(name);
    for (Lit l : t.len_ge) add(l);
    for (const auto& bits : t.cells)
      for (Lit l : bits) add(l);
  }
  return out;
}

}  // namespace strsat
