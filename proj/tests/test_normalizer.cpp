#include <gtest/gtest.h>

#include "chronolog/errors.hpp"
#include "chronolog/normalizer.hpp"
#include "chronolog/oracle.hpp"
#include "chronolog/parser.hpp"
#include "chronolog/stratifier.hpp"
#include "support/random_program.hpp"

using namespace chronolog;

namespace {

std::string normal_text(const std::string &ontology) {
  return to_string(normalize(parse_ontology(ontology)).to_ontology());
}

void expect_normal_form(const NormalProgram &p) {
  for (const NormalRule &r : p.rules) {
    auto again = as_normal_rule(r.to_rule());
    ASSERT_TRUE(again.has_value()) << to_string(r.to_rule());
    EXPECT_EQ(*again, r);
    for (const Atom *a : r.body_atoms())
      EXPECT_NE(a, nullptr);
  }
}

} // namespace

TEST(Normalize, BinaryJoinsNeedOneFreshSymbol) {
  NormalProgram p = normalize(parse_ontology("L(x) <- A(x), B(x), C(x)."));
  EXPECT_EQ(p.rules.size(), 2u);
  EXPECT_EQ(p.fresh.size(), 1u);
  expect_normal_form(p);
  EXPECT_EQ(to_string(p.to_ontology()), "_aux1(x) <- A(x), B(x).\nL(x) <- _aux1(x), C(x).\n");
}

TEST(Normalize, PastDiamondBecomesFutureBoxHead) {
  EXPECT_EQ(normal_text("R(x) <- P(x), diamondminus[1,2] Q(x)."),
            "boxplus[1,2] _aux1(x) <- Q(x).\nR(x) <- P(x), _aux1(x).\n");
  EXPECT_EQ(normal_text("R(x) <- P(x), diamondplus(1,2] Q(x)."),
            "boxminus(1,2] _aux1(x) <- Q(x).\nR(x) <- P(x), _aux1(x).\n");
}

TEST(Normalize, LoneDiamondShortcut) {
  EXPECT_EQ(normal_text("R(x) <- diamondminus[1,2] Q(x)."), "boxplus[1,2] R(x) <- Q(x).\n");
}

TEST(Normalize, NestedModalities) {
  NormalProgram p = normalize(
      parse_ontology("ConsHighVibration <- boxminus[0,50s] diamondminus(0,10s] HighVibration."));
  expect_normal_form(p);
  EXPECT_EQ(to_string(p.to_ontology()),
            "boxplus(0,10] _aux1 <- HighVibration.\n"
            "_aux2 <- boxminus[0,50] _aux1.\n"
            "ConsHighVibration <- _aux2.\n");
}

TEST(Normalize, BoxHeadChain) {
  NormalProgram p = normalize(parse_ontology("boxplus[0,1] boxminus[2,3] P(x) <- Q(x)."));
  expect_normal_form(p);
  EXPECT_EQ(p.rules.size(), 2u);
}

TEST(Normalize, DiamondHeadRejected) {
  EXPECT_THROW(normalize(parse_ontology("diamondplus[0,1] P <- Q.")), ValidationError);
}

TEST(Normalize, IdempotentOnNormalPrograms) {
  const char *text = "Rain(x) <- PositiveTemp(x), Precipitation(x).\n"
                     "boxminus[0,3600] A(x) <- B(x).\n"
                     "C(x) <- boxplus(0,1] A(x).\n"
                     "D(x) <- C(x).\n"
                     "bottom <- D(x), Rain(x).\n";
  Ontology o = parse_ontology(text);
  NormalProgram p = normalize(o);
  EXPECT_TRUE(p.fresh.empty());
  EXPECT_EQ(p.to_ontology(), o);
  EXPECT_EQ(normalize(p.to_ontology()).to_ontology(), o);
}

TEST(Normalize, FreshNamesAvoidUserPredicates) {
  NormalProgram p = normalize(parse_ontology("_aux1(x) <- A(x).\nL(x) <- A(x), B(x), _aux1(x)."));
  std::set<std::string> names;
  for (const FreshSymbol &f : p.fresh) {
    EXPECT_NE(f.name, "_aux1");
    EXPECT_TRUE(names.insert(f.name).second);
  }
}

TEST(Normalize, FreshSymbolsKeepSharedVariables) {
  NormalProgram p = normalize(parse_ontology("R(x) <- P(x), diamondminus[1,2] Q(x, y)."));
  ASSERT_EQ(p.fresh.size(), 1u);
  EXPECT_EQ(p.fresh[0].arity, 1u);
}

TEST(Normalize, PreservesNonRecursion) {
  chronolog::testing::RandomShape shape;
  shape.nesting = true;
  chronolog::testing::ProgramGenerator gen(17, shape);
  for (int n = 0; n < 300; ++n) {
    auto inst = gen.next();
    NormalProgram p = normalize(inst.program);
    expect_normal_form(p);
    EXPECT_NO_THROW(check_nonrecursive(DependencyGraph::of(p)));
  }
}

TEST(StripModalComparisons, Examples) {
  Rule r = parse_ontology("P(x) <- Q(x, y), boxminus[0,1] (x = y), boxplus[0,1] boxminus[0,1] (x != y), R(x).")
               .rules[0];
  Rule s = strip_modal_comparisons(r);
  EXPECT_EQ(to_string(s), "P(x) <- Q(x, y), x = y, x != y, R(x).");
  Rule plain = parse_ontology("P(x) <- Q(x).").rules[0];
  EXPECT_EQ(strip_modal_comparisons(plain), plain);
}

TEST(Normalize, ConservativeOnRandomPrograms) {
  chronolog::testing::RandomShape shape;
  shape.nesting = true;
  shape.max_rules = 5;
  chronolog::testing::ProgramGenerator gen(23, shape);
  for (int n = 0; n < 60; ++n) {
    auto inst = gen.next();
    oracle::NaiveModel before(inst.program, inst.data);
    oracle::NaiveModel after(normalize(inst.program).to_ontology(), inst.data);
    for (const Query &qu : inst.queries)
      ASSERT_EQ(before.naive_answer(qu), after.naive_answer(qu))
          << to_string(inst.program) << to_string(qu);
  }
}
