#include <gtest/gtest.h>

#include "strsat/bitblast.hpp"
#include "strsat/strcore.hpp"
#include "strsat/textio.hpp"
#include "test_support.hpp"

using namespace strsat;
using sat::Lit;

namespace {

Term V(const char* n) { return Term::var(n); }
Term C(const char* s) { return Term::constant(s); }

bool value(const std::vector<bool>& model, Lit l) { return model[l.var()] != l.negative(); }

struct Encoded {
  sat::Solver solver;
  std::unique_ptr<Encoder> enc;
  EncodeResult res;

  Encoded(const Formula& f, const SolverConfig& cfg) : enc(std::make_unique<Encoder>(cfg, solver)) {
    res = enc->encode_formula(f);
  }

  bool sat_with(const Assignment& a) {
    auto pins = pin_assumptions(res, a);
    if (!pins) return false;
    return solver.solve(*pins).sat;
  }
};

std::vector<std::string> strings_upto(const Alphabet& al, std::size_t n) {
  std::vector<std::string> out{""};
  std::string s;
  while (advance_length_lex(s, al, n)) out.push_back(s);
  return out;
}

void expect_canonical(const EncodeResult& res, const std::vector<bool>& model) {
  for (const auto& name : res.var_order) {
    const TermLayout& t = res.vars.at(name);
    bool below = true;
    for (std::size_t k = 0; k < t.bound; ++k) {
      bool ge = value(model, t.len_ge[k]);
      EXPECT_TRUE(below || !ge) << "non-monotone length of " << name;
      below = below && ge;
      if (!ge)
        for (Lit bit : t.cells[k]) EXPECT_FALSE(value(model, bit)) << "padding of " << name;
    }
  }
}

}  // namespace

TEST(Bitblast, ConstantLayoutIsFixed) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("aby");
  sat::Solver s;
  Encoder enc(cfg, s);
  const TermLayout& t = enc.encode_term(C("bay"));
  EXPECT_EQ(t.bound, 3u);
  for (Lit l : t.len_ge) EXPECT_EQ(l, enc.top());
  // b = code 1, a = code 0, y = code 2
  EXPECT_EQ(t.cells[0][0], enc.top());
  EXPECT_EQ(t.cells[1][0], ~enc.top());
  EXPECT_EQ(t.cells[2][1], enc.top());
}

TEST(Bitblast, ConcatBoundIsCapped) {
  SolverConfig cfg;
  cfg.l_max = 3;
  cfg.declare("a", 2);
  cfg.declare("b", 2);
  Term cat = Term::concat(V("a"), V("b"));
  Formula f{{Literal{true, Atom::contains(cat, C(""))}}};
  Encoded e(f, cfg);
  EXPECT_EQ(e.enc->encode_term(cat).bound, 3u);
  ASSERT_EQ(e.res.guards.size(), 1u);
  EXPECT_FALSE(e.sat_with(Assignment{{"a", "ab"}, {"b", "ba"}}));
  EXPECT_TRUE(e.sat_with(Assignment{{"a", "ab"}, {"b", "b"}}));
}

TEST(Bitblast, ExtractGuardNeedsParentLength) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("abmoy");
  cfg.declare("s");
  Formula f{{Literal{true, Atom::eq(Term::extract(V("s"), 4, 6), C("bay"))}}};
  Encoded e(f, cfg);
  EXPECT_FALSE(e.sat_with(Assignment{{"s", "bomba"}}));
  EXPECT_TRUE(e.sat_with(Assignment{{"s", "bombay"}}));
  EXPECT_TRUE(e.sat_with(Assignment{{"s", "bombaymo"}}));
  EXPECT_FALSE(e.sat_with(Assignment{{"s", "bombya"}}));
}

TEST(Bitblast, WorkedExampleSolves) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("abmoy");
  cfg.declare("s");
  Formula f{{Literal{true, Atom::eq(V("s"), C("bombay"))}, Literal{true, Atom::contains_at(V("s"), 4, C("bay"))}}};
  Encoded e(f, cfg);
  auto v = e.solver.solve();
  ASSERT_TRUE(v.sat);
  Assignment m = decode_model(e.res, v.model);
  EXPECT_EQ(m, (Assignment{{"s", "bombay"}}));
  EXPECT_TRUE(eval_formula(f, m, cfg));
}

TEST(Bitblast, ConflictingConstantsUnsat) {
  SolverConfig cfg;
  cfg.declare("s");
  Formula f{{Literal{true, Atom::eq(V("s"), C("a"))}, Literal{true, Atom::eq(V("s"), C("b"))}}};
  Encoded e(f, cfg);
  EXPECT_FALSE(e.solver.solve().sat);
}

TEST(Bitblast, EmptyNeedleAlwaysContained) {
  SolverConfig cfg;
  cfg.declare("s");
  Formula f{{Literal{false, Atom::contains(V("s"), C(""))}}};
  Encoded e(f, cfg);
  EXPECT_FALSE(e.solver.solve().sat);
}

TEST(Bitblast, EmptyLengthDecodesToEpsilon) {
  SolverConfig cfg;
  cfg.declare("s");
  Formula f{{Literal{true, Atom::eq(V("s"), C(""))}}};
  Encoded e(f, cfg);
  auto v = e.solver.solve();
  ASSERT_TRUE(v.sat);
  for (Lit l : e.res.vars.at("s").len_ge) EXPECT_FALSE(value(v.model, l));
  EXPECT_EQ(decode_model(e.res, v.model), (Assignment{{"s", ""}}));
}

TEST(Bitblast, PinnedConstantsRoundTrip) {
  SolverConfig cfg;
  cfg.alphabet = Alphabet("abc");
  Formula f{{Literal{true, Atom::eq(V("x"), C("cab"))}, Literal{true, Atom::eq(V("y"), C(""))},
             Literal{true, Atom::eq(C("bb"), V("z"))}}};
  Encoded e(f, cfg);
  auto v = e.solver.solve();
  ASSERT_TRUE(v.sat);
  EXPECT_EQ(decode_model(e.res, v.model), (Assignment{{"x", "cab"}, {"y", ""}, {"z", "bb"}}));
}

TEST(Bitblast, PositiveContainsGetsSelectors) {
  SolverConfig cfg;
  cfg.declare("s", 3);
  Formula f{{Literal{true, Atom::contains(V("s"), C("b"))}, Literal{false, Atom::contains(V("s"), C("a"))}}};
  Encoded e(f, cfg);
  ASSERT_EQ(e.res.contains.size(), 1u);
  EXPECT_EQ(e.res.contains[0].selectors.size(), 4u);
  int models = 0;
  while (true) {
    auto v = e.solver.solve();
    if (!v.sat) break;
    ++models;
    Assignment m = decode_model(e.res, v.model);
    EXPECT_TRUE(eval_formula(f, m, cfg));
    int on = 0;
    for (Lit sel : e.res.contains[0].selectors) on += value(v.model, sel);
    EXPECT_EQ(on, 1);
    e.solver.add_clause(blocking_clause(e.res, v.model));
  }
  EXPECT_EQ(models, 3);  // b, bb, bbb
}

// Exhaustive agreement between the encoding and the evaluator.
TEST(Bitblast, AgreesWithEvaluatorExhaustively) {
  gen::Rng rng(101);
  gen::FormulaShape shape;
  shape.vars = {"x", "y"};
  shape.max_literals = 3;
  for (int i = 0; i < 300; ++i) {
    SolverConfig cfg;
    cfg.l_max = rng.between(1, 2);
    cfg.declare("x");
    cfg.declare("y", rng.between(0, cfg.l_max));
    Formula f = gen::random_formula(rng, cfg, shape);
    Encoded e(f, cfg);
    auto vars = variables_of(f);
    std::vector<std::string> xs = strings_upto(cfg.alphabet, cfg.bound_of("x"));
    std::vector<std::string> ys = strings_upto(cfg.alphabet, cfg.bound_of("y"));
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        Assignment a{{"x", x}, {"y", y}};
        Assignment pinned;
        for (const auto& v : vars) pinned.set(v, *a.find(v));
        bool expect = eval_formula(f, a, cfg);
        ASSERT_EQ(e.sat_with(pinned), expect) << print_strf(f, cfg) << " x=" << x << " y=" << y;
      }
    }
    auto v = e.solver.solve();
    if (v.sat) {
      expect_canonical(e.res, v.model);
      Assignment m = decode_model(e.res, v.model);
      for (const auto& name : {"x", "y"})
        if (!m.contains(name)) m.set(name, "");
      EXPECT_TRUE(eval_formula(f, m, cfg));
    }
  }
}

TEST(Bitblast, LargerAlphabetAgreement) {
  gen::Rng rng(7);
  gen::FormulaShape shape;
  shape.vars = {"x"};
  shape.max_literals = 3;
  for (int i = 0; i < 150; ++i) {
    SolverConfig cfg;
    cfg.alphabet = Alphabet("abc");
    cfg.l_max = 3;
    cfg.declare("x");
    Formula f = gen::random_formula(rng, cfg, shape);
    Encoded e(f, cfg);
    for (const auto& x : strings_upto(cfg.alphabet, 3)) {
      Assignment a{{"x", x}};
      Assignment pinned = variables_of(f).empty() ? Assignment{} : a;
      ASSERT_EQ(e.sat_with(pinned), eval_formula(f, a, cfg)) << "x=" << x;
    }
  }
}
