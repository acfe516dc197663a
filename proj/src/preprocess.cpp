#include "strsat/preprocess.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "strsat/strcore.hpp"

namespace strsat {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n = 0) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // The smaller index stays the root, so roots are first occurrences.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool is_ground(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      return false;
    case TermKind::Const:
      return true;
    case TermKind::Extract:
      return is_ground(t.base());
    case TermKind::Concat:
      return is_ground(t.left()) && is_ground(t.right());
  }
  return false;
}

bool is_empty_const(const Term& t) { return t.kind() == TermKind::Const && t.value().empty(); }

Term substitute(const Term& t, const std::function<Term(const std::string&)>& repl) {
  switch (t.kind()) {
    case TermKind::Var:
      return repl(t.name());
    case TermKind::Const:
      return t;
    case TermKind::Extract:
      return Term::extract(substitute(t.base(), repl), t.from(), t.to());
    case TermKind::Concat:
      return Term::concat(substitute(t.left(), repl), substitute(t.right(), repl));
  }
  return t;
}

EarlyUnsat early(std::optional<Literal> a, std::optional<Literal> b, std::string reason) {
  return EarlyUnsat{std::move(a), std::move(b), std::move(reason)};
}

}  // namespace

Assignment SimplifiedFormula::extend(const Assignment& a) const {
  Assignment out = a;
  for (const auto& [name, term] : substitution) {
    if (term.kind() == TermKind::Var) {
      const std::string* v = a.find(term.name());
      if (!v) out.set(term.name(), "");
      out.set(name, v ? *v : std::string());
    } else {
      out.set(name, term.value());
    }
  }
  return out;
}

std::variant<SimplifiedFormula, EarlyUnsat> propagate_constants(const Formula& f, const SolverConfig& cfg) {
  if (f.is_false) return early(std::nullopt, std::nullopt, "formula is false");

  const std::vector<std::string> names = variables_of(f);
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = i;

  UnionFind uf(names.size());
  for (const auto& lit : f.literals) {
    const Atom& a = lit.atom;
    if (lit.positive && a.kind == AtomKind::Eq && a.lhs.kind() == TermKind::Var && a.rhs.kind() == TermKind::Var)
      uf.unite(id[a.lhs.name()], id[a.rhs.name()]);
  }

  struct ClassInfo {
    std::size_t bound = std::numeric_limits<std::size_t>::max();
    std::optional<std::string> pin;
    std::optional<Literal> pin_lit;
    std::map<std::size_t, std::pair<char, Literal>> cells;  // 1-based position
    std::size_t min_len = 0;
    std::optional<Literal> min_len_lit;
  };
  std::vector<ClassInfo> info(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto& c = info[uf.find(i)];
    c.bound = std::min(c.bound, cfg.bound_of(names[i]));
  }

  for (const auto& lit : f.literals) {
    if (!lit.positive) continue;
    const Atom& a = lit.atom;
    if (a.kind == AtomKind::Eq) {
      const Term* var = nullptr;
      const Term* con = nullptr;
      if (a.lhs.kind() == TermKind::Var && a.rhs.kind() == TermKind::Const) var = &a.lhs, con = &a.rhs;
      if (a.rhs.kind() == TermKind::Var && a.lhs.kind() == TermKind::Const) var = &a.rhs, con = &a.lhs;
      if (!var) continue;
      auto& c = info[uf.find(id[var->name()])];
      if (c.pin && *c.pin != con->value())
        return early(c.pin_lit, lit, "conflicting constants for " + var->name());
      if (con->value().size() > c.bound)
        return early(lit, std::nullopt, "constant exceeds the length bound of " + var->name());
      c.pin = con->value();
      c.pin_lit = lit;
    } else if (a.kind == AtomKind::ContainsAt && a.lhs.kind() == TermKind::Var && a.rhs.kind() == TermKind::Const) {
      auto& c = info[uf.find(id[a.lhs.name()])];
      const std::string& needle = a.rhs.value();
      for (std::size_t k = 0; k < needle.size(); ++k) {
        auto [it, fresh] = c.cells.try_emplace(a.position + k, needle[k], lit);
        if (!fresh && it->second.first != needle[k])
          return early(it->second.second, lit, "conflicting characters at position " + std::to_string(a.position + k));
      }
      std::size_t need = a.position + needle.size() - 1;
      if (need > c.min_len) {
        c.min_len = need;
        c.min_len_lit = lit;
      }
      if (need > c.bound) return early(lit, std::nullopt, "required length exceeds the bound of " + a.lhs.name());
    }
  }

  for (auto& c : info) {
    if (!c.pin) continue;
    if (c.pin->size() < c.min_len) return early(c.pin_lit, c.min_len_lit, "pinned value too short");
    for (const auto& [pos, cell] : c.cells)
      if ((*c.pin)[pos - 1] != cell.first) return early(c.pin_lit, cell.second, "pinned value disagrees with a position");
  }

  auto repl = [&](const std::string& name) {
    std::size_t r = uf.find(id.at(name));
    if (info[r].pin) return Term::constant(*info[r].pin);
    return Term::var(names[r]);
  };

  SimplifiedFormula out;
  out.config = cfg;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::size_t r = uf.find(i);
    if (r != i || info[r].pin) out.substitution.emplace_back(names[i], repl(names[i]));
    else if (info[r].bound < cfg.bound_of(names[i])) out.config.set_bound(names[i], info[r].bound);
  }

  std::map<std::string, Literal> kept;
  for (const auto& lit : f.literals) {
    Atom a = lit.atom;
    a.lhs = substitute(a.lhs, repl);
    a.rhs = substitute(a.rhs, repl);
    if (is_ground(a.lhs) && is_ground(a.rhs)) {
      auto v = eval_atom(a, Assignment{}, cfg);
      if (!v) return early(lit, std::nullopt, "undefined ground term");
      if (*v != lit.positive) return early(lit, std::nullopt, "ground literal is false");
      continue;
    }
    if (a.kind == AtomKind::Eq && a.lhs == a.rhs && a.lhs.kind() == TermKind::Var) {
      if (lit.positive) continue;
      return early(lit, std::nullopt, "disequality between equal variables");
    }
    Literal l2{lit.positive, a};
    auto [it, fresh] = kept.try_emplace(a.key(), lit);
    if (!fresh) {
      if (it->second.positive != lit.positive) return early(it->second, lit, "complementary literals");
      continue;
    }
    out.formula.literals.push_back(std::move(l2));
  }
  return out;
}

std::optional<std::size_t> ContainmentGraph::index_of(const Term& t) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == t) return i;
  return std::nullopt;
}

bool ContainmentGraph::reaches(const Term& from, const Term& to) const {
  auto a = index_of(from), b = index_of(to);
  if (!a || !b) return false;
  return reach[component[*a]][component[*b]];
}

std::variant<ContainmentGraph, EarlyUnsat> build_containment_graph(const Formula& f) {
  ContainmentGraph g;
  std::map<std::string, std::size_t> idx;
  auto node = [&](const Term& t) {
    auto [it, fresh] = idx.try_emplace(t.key(), g.nodes.size());
    if (fresh) g.nodes.push_back(t);
    return it->second;
  };
  std::vector<Literal> edge_lit;
  auto edge = [&](std::size_t from, std::size_t to, const Literal& lit) {
    g.edges.emplace_back(from, to);
    edge_lit.push_back(lit);
  };
  for (const auto& lit : f.literals) {
    std::size_t hay = node(lit.atom.lhs);
    std::size_t needle = node(lit.atom.rhs);
    if (!lit.positive) continue;
    edge(needle, hay, lit);
    if (lit.atom.kind == AtomKind::Eq) edge(hay, needle, lit);
  }

  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> out(n);  // edge indices
  for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].first].push_back(e);

  // Tarjan's SCC algorithm.
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  g.component.assign(n, 0);
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t e : out[v]) {
      std::size_t w = g.edges[e].second;
      if (order[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        g.component[w] = g.num_components;
      } while (w != v);
      ++g.num_components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (order[v] == kUnvisited) visit(v);

  const std::size_t c = g.num_components;
  std::vector<std::set<std::size_t>> dag(c);
  for (const auto& [a, b] : g.edges)
    if (g.component[a] != g.component[b]) dag[g.component[a]].insert(g.component[b]);
  g.reach.assign(c, std::vector<bool>(c, false));
  for (std::size_t s = 0; s < c; ++s) {
    std::vector<std::size_t> todo{s};
    g.reach[s][s] = true;
    while (!todo.empty()) {
      std::size_t x = todo.back();
      todo.pop_back();
      for (std::size_t y : dag[x]) {
        if (!g.reach[s][y]) {
          g.reach[s][y] = true;
          todo.push_back(y);
        }
      }
    }
  }

  std::vector<std::optional<std::size_t>> first_in(c);
  for (std::size_t v = 0; v < n; ++v) {
    auto& rep = first_in[g.component[v]];
    if (!rep) rep = v;
    else g.implied_equalities.emplace_back(g.nodes[*rep], g.nodes[v]);
  }

  // Shortest edge path from a to b, used to name the positive side of a contradiction.
  auto witness = [&](std::size_t a, std::size_t b) -> std::optional<Literal> {
    if (a == b) return std::nullopt;
    std::vector<std::size_t> via(n, kUnvisited);
    std::vector<std::size_t> queue{a};
    std::vector<bool> seen(n, false);
    seen[a] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t x = queue[head];
      for (std::size_t e : out[x]) {
        std::size_t y = g.edges[e].second;
        if (seen[y]) continue;
        seen[y] = true;
        via[y] = e;
        queue.push_back(y);
      }
    }
    if (!seen[b]) return std::nullopt;
    std::size_t e = via[b];
    while (g.edges[e].first != a) e = via[g.edges[e].first];
    return edge_lit[e];
  };

  for (const auto& lit : f.literals) {
    if (lit.positive) continue;
    std::size_t hay = idx.at(lit.atom.lhs.key());
    std::size_t needle = idx.at(lit.atom.rhs.key());
    if (lit.atom.kind == AtomKind::Contains && g.reach[g.component[needle]][g.component[hay]])
      return early(lit, witness(needle, hay), "containment follows by transitivity");
    if (lit.atom.kind == AtomKind::Eq && g.component[needle] == g.component[hay])
      return early(lit, witness(needle, hay), "mutual containment forces equality");
  }
  return g;
}

EqualityResult solve_equality_fragment(const Formula& f, const SolverConfig& cfg) {
  if (f.is_false) return EqualityUnsat{"formula is false"};
  auto simple = [](const Term& t) { return t.kind() == TermKind::Var || t.kind() == TermKind::Const; };
  for (const auto& lit : f.literals)
    if (lit.atom.kind != AtomKind::Eq || !simple(lit.atom.lhs) || !simple(lit.atom.rhs))
      return EqualityInapplicable{"not an equality-only formula"};

  std::map<std::string, std::size_t> idx;
  std::vector<Term> nodes;
  UnionFind uf;
  auto node = [&](const Term& t) {
    auto [it, fresh] = idx.try_emplace(t.key(), nodes.size());
    if (fresh) {
      nodes.push_back(t);
      uf.add();
    }
    return it->second;
  };
  for (const auto& lit : f.literals) {
    std::size_t a = node(lit.atom.lhs), b = node(lit.atom.rhs);
    if (lit.positive) uf.unite(a, b);
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = nodes.size();
  std::vector<std::optional<std::string>> pin(n);
  std::vector<std::size_t> bound(n, kNone);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = uf.find(v);
    if (nodes[v].kind() == TermKind::Const) {
      if (pin[r] && *pin[r] != nodes[v].value()) return EqualityUnsat{"two constants in one class"};
      pin[r] = nodes[v].value();
    } else {
      bound[r] = std::min(bound[r], cfg.bound_of(nodes[v].name()));
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    if (uf.find(r) == r && pin[r] && bound[r] != kNone && pin[r]->size() > bound[r])
      return EqualityUnsat{"constant exceeds a variable bound"};

  UnionFind comp(n);
  for (const auto& lit : f.literals) {
    if (lit.positive) continue;
    std::size_t a = uf.find(idx.at(lit.atom.lhs.key())), b = uf.find(idx.at(lit.atom.rhs.key()));
    if (a == b) return EqualityUnsat{"disequality inside an equality class"};
    comp.unite(a, b);
  }

  std::map<std::size_t, std::vector<std::size_t>> members;  // component -> class roots
  for (std::size_t r = 0; r < n; ++r)
    if (uf.find(r) == r) members[comp.find(r)].push_back(r);

  std::vector<std::string> value(n);
  for (const auto& [_, classes] : members) {
    std::set<std::string> used;
    std::set<std::size_t> bounds;
    for (std::size_t r : classes) {
      if (pin[r]) used.insert(*pin[r]);
      else bounds.insert(bound[r]);
    }
    if (bounds.empty()) {
      for (std::size_t r : classes) value[r] = *pin[r];
      continue;
    }
    if (bounds.size() > 1) return EqualityInapplicable{"heterogeneous bounds across a disequality component"};
    const std::size_t b = *bounds.begin();
    if (classes.size() > domain_size(cfg.alphabet, b))
      return EqualityInapplicable{"more classes than strings in the domain"};
    std::string next;
    for (std::size_t r : classes) {
      if (pin[r]) {
        value[r] = *pin[r];
        continue;
      }
      while (used.count(next))
        if (!advance_length_lex(next, cfg.alphabet, b)) return EqualityInapplicable{"domain exhausted"};
      value[r] = next;
      used.insert(next);
    }
  }

  EqualitySat sat;
  for (const auto& name : variables_of(f)) sat.model.set(name, value[uf.find(idx.at(name))]);
  return sat;
}

std::optional<std::size_t> LengthSystem::index_of(const Term& t) const {
  auto it = index.find(t.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool LengthSystem::satisfied_by(const std::vector<std::size_t>& len) const {
  if (len.size() != terms.size()) return false;
  for (std::size_t i = 0; i < len.size(); ++i)
    if (len[i] > upper[i]) return false;
  for (const auto& c : constraints) {
    using K = LengthConstraint::Kind;
    bool ok = true;
    switch (c.kind) {
      case K::Equal:
        ok = len[c.a] == len[c.b];
        break;
      case K::Sum:
        ok = len[c.a] == len[c.b] + len[c.c];
        break;
      case K::Fixed:
        ok = len[c.a] == c.value;
        break;
      case K::AtLeast:
        ok = len[c.a] >= c.value;
        break;
      case K::ContainsLen:
        ok = len[c.a] >= len[c.b];
        break;
      case K::ContainsAtLen:
        ok = len[c.a] + 1 >= len[c.b] + c.value;
        break;
    }
    if (!ok) return false;
  }
  return true;
}

LengthSystem derive_length_constraints(const Formula& f, const SolverConfig& cfg) {
  using K = LengthConstraint::Kind;
  LengthSystem sys;
  std::function<std::size_t(const Term&)> add = [&](const Term& t) -> std::size_t {
    if (auto i = sys.index_of(t)) return *i;
    std::size_t a = 0, b = 0, upper = 0;
    switch (t.kind()) {
      case TermKind::Var:
        upper = cfg.bound_of(t.name());
        break;
      case TermKind::Const:
        upper = t.value().size();
        break;
      case TermKind::Extract:
        a = add(t.base());
        upper = t.to() - t.from() + 1;
        break;
      case TermKind::Concat:
        a = add(t.left());
        b = add(t.right());
        upper = std::min(cfg.l_max, sys.upper[a] + sys.upper[b]);
        break;
    }
    const std::size_t self = sys.terms.size();
    sys.terms.push_back(t);
    sys.upper.push_back(upper);
    sys.index[t.key()] = self;
    if (t.kind() == TermKind::Const) sys.constraints.push_back({K::Fixed, self, 0, 0, upper});
    if (t.kind() == TermKind::Extract) {
      sys.constraints.push_back({K::Fixed, self, 0, 0, upper});
      sys.constraints.push_back({K::AtLeast, a, 0, 0, t.to()});
    }
    if (t.kind() == TermKind::Concat) sys.constraints.push_back({K::Sum, self, a, b, 0});
    return self;
  };

  for (const auto& lit : f.literals) {
    const Atom& at = lit.atom;
    std::size_t a = add(at.lhs), b = add(at.rhs);
    if (lit.positive) {
      switch (at.kind) {
        case AtomKind::Eq:
          sys.constraints.push_back({K::Equal, a, b, 0, 0});
          break;
        case AtomKind::Contains:
          sys.constraints.push_back({K::ContainsLen, a, b, 0, 0});
          break;
        case AtomKind::ContainsAt:
          sys.constraints.push_back({K::ContainsAtLen, a, b, 0, at.position});
          break;
      }
      continue;
    }
    // Negations only say something about lengths when they state t != empty.
    if (at.kind == AtomKind::Eq && is_empty_const(at.rhs)) sys.constraints.push_back({K::AtLeast, a, 0, 0, 1});
    else if (at.kind == AtomKind::Eq && is_empty_const(at.lhs)) sys.constraints.push_back({K::AtLeast, b, 0, 0, 1});
    else if (at.kind != AtomKind::Eq && is_empty_const(at.lhs) && (at.kind == AtomKind::Contains || at.position == 1))
      sys.constraints.push_back({K::AtLeast, b, 0, 0, 1});
  }
  return sys;
}

namespace {

using Interval = std::vector<std::pair<long long, long long>>;

bool propagate_lengths(const LengthSystem& sys, Interval& d) {
  using K = LengthConstraint::Kind;
  bool changed = true;
  auto lower = [&](std::size_t i, long long v) {
    if (v > d[i].first) d[i].first = v, changed = true;
  };
  auto upper = [&](std::size_t i, long long v) {
    if (v < d[i].second) d[i].second = v, changed = true;
  };
  while (changed) {
    changed = false;
    for (const auto& c : sys.constraints) {
      switch (c.kind) {
        case K::Equal:
          lower(c.a, d[c.b].first), lower(c.b, d[c.a].first);
          upper(c.a, d[c.b].second), upper(c.b, d[c.a].second);
          break;
        case K::Sum:
          lower(c.a, d[c.b].first + d[c.c].first);
          upper(c.a, d[c.b].second + d[c.c].second);
          lower(c.b, d[c.a].first - d[c.c].second);
          upper(c.b, d[c.a].second - d[c.c].first);
          lower(c.c, d[c.a].first - d[c.b].second);
          upper(c.c, d[c.a].second - d[c.b].first);
          break;
        case K::Fixed:
          lower(c.a, static_cast<long long>(c.value));
          upper(c.a, static_cast<long long>(c.value));
          break;
        case K::AtLeast:
          lower(c.a, static_cast<long long>(c.value));
          break;
        case K::ContainsLen:
        case K::ContainsAtLen: {
          long long off = c.kind == K::ContainsLen ? 0 : static_cast<long long>(c.value) - 1;
          lower(c.a, d[c.b].first + off);
          upper(c.b, d[c.a].second - off);
          break;
        }
      }
    }
    for (const auto& [lo, hi] : d)
      if (lo > hi) return false;
  }
  return true;
}

}  // namespace

LengthResult solve_lengths(const LengthSystem& sys, std::span<const LengthNogood> blocked, std::size_t node_limit) {
  const std::size_t n = sys.terms.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (sys.terms[i].kind() == TermKind::Var) order.push_back(i);
  for (std::size_t i = 0; i < n; ++i)
    if (sys.terms[i].kind() != TermKind::Var) order.push_back(i);

  LengthResult result;
  bool limit_hit = false;
  auto excluded = [&](const Interval& d) {
    for (const auto& ng : blocked) {
      bool all = true;
      for (const auto& [term, len] : ng) {
        auto v = static_cast<long long>(len);
        if (d[term].first != v || d[term].second != v) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  };

  std::function<bool(Interval)> search = [&](Interval d) -> bool {
    if (++result.nodes > node_limit) {
      limit_hit = true;
      return false;
    }
    if (!propagate_lengths(sys, d) || excluded(d)) return false;
    for (std::size_t i : order) {
      if (d[i].first == d[i].second) continue;
      for (long long v = d[i].second; v >= d[i].first; --v) {
        Interval next = d;
        next[i] = {v, v};
        if (search(std::move(next))) return true;
        if (limit_hit) return false;
      }
      return false;
    }
    result.lengths.clear();
    for (const auto& iv : d) result.lengths.push_back(static_cast<std::size_t>(iv.first));
    if (!sys.satisfied_by(result.lengths)) throw std::logic_error("length propagation accepted a violating tuple");
    return true;
  };

  Interval init(n);
  for (std::size_t i = 0; i < n; ++i) init[i] = {0, static_cast<long long>(sys.upper[i])};
  if (search(std::move(init))) result.status = LengthResult::Status::Candidate;
  else if (limit_hit) result.status = LengthResult::Status::LimitReached;
  else result.status = LengthResult::Status::AbstractUnsat;
  return result;
}

}  // namespace strsat
