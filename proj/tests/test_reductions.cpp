#include <gtest/gtest.h>

#include "strsat/engine.hpp"
#include "strsat/oracle.hpp"
#include "strsat/reductions.hpp"
#include "strsat/strcore.hpp"
#include "test_support.hpp"

using namespace strsat;

namespace {

Term V(const char* n) { return Term::var(n); }
Term C(const char* s) { return Term::constant(s); }
Literal P(Atom a) { return Literal{true, std::move(a)}; }
Literal N(Atom a) { return Literal{false, std::move(a)}; }

const CnfInstance kUnitTrue{1, {{1, 1, 1}}};
const CnfInstance kContradiction{1, {{1, 1, 1}, {-1, -1, -1}}};

std::vector<std::vector<bool>> satisfying(const CnfInstance& phi) { return gen::all_models(phi); }

// Literal counts per fragment, read off the constraint tables.
std::size_t expected_literals(Fragment f, ReductionMode mode, std::size_t n, std::size_t m) {
  switch (f) {
    case Fragment::EC: return n + 4 * m;
    case Fragment::EA: return n + m;
    case Fragment::T: return (mode == ReductionMode::Repaired ? 3 * n : n) + 4 * m;
    default: return 3 * n + 4 * m;
  }
}

}  // namespace

TEST(Reduce, EcUnitClause) {
  auto out = reduce(Fragment::EC, kUnitTrue);
  EXPECT_EQ(out.config.alphabet, Alphabet("a"));
  std::vector<Literal> expect{N(Atom::eq(V("s1"), V("r1"))), P(Atom::contains(V("V1"), V("s1"))),
                              P(Atom::contains(V("V1"), V("s1"))), P(Atom::contains(V("V1"), V("s1"))),
                              N(Atom::eq(V("V1"), C("")))};
  EXPECT_EQ(out.formula.literals, expect);
  EXPECT_EQ(variables_of(out.formula), (std::vector<std::string>{"s1", "r1", "V1"}));
}

TEST(Reduce, EaUnitClause) {
  auto out = reduce(Fragment::EA, kUnitTrue);
  Term cat = Term::concat(Term::concat(Term::concat(V("s1"), V("s1")), V("s1")), V("p1"));
  std::vector<Literal> expect{P(Atom::eq(Term::concat(V("s1"), V("r1")), C("a"))), P(Atom::eq(cat, C("aaa")))};
  EXPECT_EQ(out.formula.literals, expect);
  EXPECT_EQ(out.config.bound_of("p1"), 2u);
  EXPECT_EQ(out.config.bound_of("s1"), 1u);
}

TEST(Reduce, TVerbatimKeepsFourB) {
  auto verbatim = reduce(Fragment::T, kUnitTrue, ReductionMode::Verbatim);
  auto repaired = reduce(Fragment::T, kUnitTrue, ReductionMode::Repaired);
  EXPECT_EQ(verbatim.formula.literals.back(), N(Atom::contains_at(V("V1"), 1, C("bbbb"))));
  EXPECT_EQ(repaired.formula.literals.back(), N(Atom::contains_at(V("V1"), 1, C("bbb"))));
}

TEST(Reduce, SizesAndFidelity) {
  for (Fragment frag : kAllFragments)
    for (ReductionMode mode : {ReductionMode::Verbatim, ReductionMode::Repaired})
      for (int n = 3; n <= 6; ++n)
        for (int m = 1; m <= 8; m += 3) {
          CnfInstance phi = gen_random_3cnf(n, m, n * 100 + m);
          auto out = reduce(frag, phi, mode);
          EXPECT_EQ(out.formula.literals.size(), expected_literals(frag, mode, n, m));
          EXPECT_LE(out.formula.literals.size(), std::size_t(3 * n + 4 * m));
          EXPECT_EQ(variables_of(out.formula).size(), std::size_t(2 * n + m));
          EXPECT_EQ(out.var_map.size(), std::size_t(n));
          EXPECT_EQ(out.clause_vars.size(), std::size_t(m));
          EXPECT_EQ(classify_fragment(out.formula).name(), fragment_label(frag));
          for (const auto& [s, r] : out.var_map) {
            EXPECT_EQ(out.config.bound_of(s), 1u);
            EXPECT_EQ(out.config.bound_of(r), 1u);
          }
          for (const auto& v : out.clause_vars) EXPECT_EQ(out.config.bound_of(v), frag == Fragment::EA ? 2u : 3u);
        }
}

TEST(Reduce, RejectsNonThreeCnf) {
  EXPECT_THROW(reduce(Fragment::EC, CnfInstance{2, {{1, 2}}}), std::invalid_argument);
  EXPECT_THROW(reduce(Fragment::C, CnfInstance{2, {{1, 2, 1, 2}}}), std::invalid_argument);
  EXPECT_THROW(reduce(Fragment::T, CnfInstance{1, {{1, 2, 1}}}), std::invalid_argument);
}

TEST(Witness, Examples) {
  EXPECT_EQ(witness_forward(Fragment::EA, kUnitTrue, {true}), (Assignment{{"s1", "a"}, {"r1", ""}, {"p1", ""}}));
  EXPECT_EQ(witness_forward(Fragment::ETConst, kUnitTrue, {true}),
            (Assignment{{"s1", "a"}, {"r1", "b"}, {"V1", "aaa"}}));
  EXPECT_THROW(witness_forward(Fragment::EA, kUnitTrue, {false}), std::invalid_argument);
}

TEST(Witness, DecodeRoundTrip) {
  CnfInstance phi = gen_random_3cnf(5, 8, 3);
  for (Fragment frag : kAllFragments)
    for (ReductionMode mode : {ReductionMode::Verbatim, ReductionMode::Repaired}) {
      auto out = reduce(frag, phi, mode);
      for (const auto& values : satisfying(phi))
        EXPECT_EQ(decode_bool(out, witness_forward(frag, phi, values, mode)), values);
    }
}

TEST(Decode, Examples) {
  auto et = reduce(Fragment::ETConst, kUnitTrue);
  EXPECT_EQ(decode_bool(et, Assignment{{"s1", "a"}, {"r1", "b"}, {"V1", "aaa"}}), std::vector<bool>{true});
  auto ec = reduce(Fragment::EC, kUnitTrue);
  EXPECT_EQ(decode_bool(ec, Assignment{{"s1", ""}, {"r1", "a"}, {"V1", "a"}}), std::vector<bool>{false});
}

// Exhaustive over satisfying assignments, for every fragment and mode.
TEST(Witness, ForwardSoundness) {
  for (Fragment frag : kAllFragments)
    for (ReductionMode mode : {ReductionMode::Verbatim, ReductionMode::Repaired})
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 3 + static_cast<int>(seed % 6);
        int m = 1 + static_cast<int>(seed % 15);
        CnfInstance phi = gen_random_3cnf(n, m, seed);
        auto out = reduce(frag, phi, mode);
        for (const auto& values : satisfying(phi))
          ASSERT_TRUE(validate_model(out.formula, witness_forward(frag, phi, values, mode), out.config))
              << fragment_label(frag) << " seed " << seed;
      }
}

TEST(Equisat, Examples) {
  auto et = verify_equisat(Fragment::ETConst, kContradiction);
  EXPECT_FALSE(et.phi_sat);
  EXPECT_FALSE(et.psi_sat);
  EXPECT_FALSE(et.counterexample);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CnfInstance phi = gen_random_3cnf(3, 3, seed);
    if (!gen::brute_force_cnf(phi)) continue;
    auto ea = verify_equisat(Fragment::EA, phi);
    EXPECT_TRUE(ea.phi_sat);
    EXPECT_TRUE(ea.psi_sat);
    EXPECT_EQ(ea.decoded_ok, true);
  }

  // The encoding admits s1 = r1 = "" with V1 = "a": every needle is empty.
  auto ec = verify_equisat(Fragment::EC, kContradiction);
  EXPECT_FALSE(ec.phi_sat);
  EXPECT_TRUE(ec.psi_sat);
  EXPECT_TRUE(ec.counterexample);
}

// psi_sat for each fragment, checked against the string oracle directly.
TEST(Equisat, HarnessMatchesOracle) {
  for (Fragment frag : kAllFragments)
    for (ReductionMode mode : {ReductionMode::Verbatim, ReductionMode::Repaired})
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        CnfInstance phi = gen_random_3cnf_with_repeats(2, 1 + static_cast<int>(seed % 3), seed);
        auto out = reduce(frag, phi, mode);
        auto oracle = enumerate_sat(out.formula, out.config);
        ASSERT_NE(oracle.verdict, OracleVerdict::BudgetExceeded);
        auto rep = verify_equisat(frag, phi, mode);
        EXPECT_EQ(rep.psi_sat, oracle.verdict == OracleVerdict::Sat);
        EXPECT_EQ(rep.phi_sat, gen::brute_force_cnf(phi).has_value());
        EXPECT_TRUE(rep.forward_ok);
      }
}

TEST(Equisat, MinimalCounterexamples) {
  const CnfInstance expect{1, {{-1, -1, -1}, {1, 1, 1}}};
  struct Row {
    Fragment frag;
    ReductionMode mode;
    bool fails;
  };
  const Row rows[] = {
      {Fragment::EC, ReductionMode::Verbatim, true},       {Fragment::ETConst, ReductionMode::Verbatim, false},
      {Fragment::EA, ReductionMode::Verbatim, false},      {Fragment::EXConst, ReductionMode::Verbatim, false},
      {Fragment::C, ReductionMode::Verbatim, true},        {Fragment::T, ReductionMode::Verbatim, true},
      {Fragment::T, ReductionMode::Repaired, false},
  };
  for (const auto& row : rows) {
    auto cex = minimal_backward_counterexample(row.frag, row.mode);
    if (row.fails) {
      ASSERT_TRUE(cex) << fragment_label(row.frag);
      EXPECT_EQ(*cex, expect) << fragment_label(row.frag);
    } else {
      EXPECT_FALSE(cex) << fragment_label(row.frag);
    }
  }
}

TEST(Generator, DeterministicDistinctVariables) {
  EXPECT_EQ(gen_random_3cnf(3, 1, 7), gen_random_3cnf(3, 1, 7));
  CnfInstance phi = gen_random_3cnf(6, 40, 11);
  EXPECT_EQ(phi.clauses.size(), 40u);
  EXPECT_TRUE(is_3cnf(phi));
  for (const auto& cl : phi.clauses) {
    EXPECT_NE(std::abs(cl[0]), std::abs(cl[1]));
    EXPECT_NE(std::abs(cl[0]), std::abs(cl[2]));
    EXPECT_NE(std::abs(cl[1]), std::abs(cl[2]));
  }
  EXPECT_THROW(gen_random_3cnf(2, 1, 0), std::invalid_argument);
  EXPECT_EQ(gen_random_3cnf_with_repeats(1, 4, 5), gen_random_3cnf_with_repeats(1, 4, 5));
  EXPECT_TRUE(is_3cnf(gen_random_3cnf_with_repeats(1, 4, 5)));
}

TEST(Fragment, Names) {
  for (Fragment f : kAllFragments) EXPECT_EQ(parse_fragment(fragment_flag(f)), f);
  EXPECT_FALSE(parse_fragment("e"));
}
