#include <gtest/gtest.h>

#include "chronolog/errors.hpp"
#include "chronolog/parser.hpp"
#include "chronolog/validate.hpp"

using namespace chronolog;

namespace {

const char *kWeather = R"(
Rain(x) <- PositiveTemp(x), Precipitation(x).
boxminus[0,1h] Hurricane(x) <- boxminus[0,1h] HurricaneForceWind(x).
boxminus[0,24h] ExcessiveHeat(x) <- boxminus[0,24h] TempAbove24(x), diamondminus[0,24h] TempAbove41(x).
HurricaneAffectedCounty(x) <- LocationOf(x, y), Hurricane(y).
SpreadRainCounty(x) <- LocationOf(x, y), LocationOf(x, z), y != z, Rain(y), Rain(z).
)";

const char *kEngine = R"(
SmoothShutDown <- IdleRPM, boxminus(0,15min) IntermRPM, diamondminus[15min,25min] RunningRPM.
ConsHighVibration <- boxminus[0,50s] diamondminus(0,10s] HighVibration.
)";

std::vector<ViolationKind> kinds(const std::vector<Violation> &v) {
  std::vector<ViolationKind> out;
  for (const Violation &x : v)
    out.push_back(x.kind);
  return out;
}

} // namespace

TEST(Validate, SampleOntologiesAreValid) {
  EXPECT_TRUE(validate(parse_ontology(kWeather), {}).empty());
  EXPECT_TRUE(validate(parse_ontology(kEngine), {}).empty());
}

TEST(Validate, UnsafeHeadVariable) {
  auto v = validate(parse_ontology("P(x) <- Q(y)."), {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::UnsafeVariable);
  EXPECT_NE(v[0].message.find("x"), std::string::npos);
}

TEST(Validate, UnsafeComparisonVariable) {
  auto v = validate(parse_ontology("P(x) <- Q(x), x != y."), {});
  EXPECT_EQ(kinds(v), std::vector{ViolationKind::UnsafeVariable});
}

TEST(Validate, VariableUnderOperatorIsBound) {
  EXPECT_TRUE(validate(parse_ontology("P(x) <- boxplus[0,1] Q(x)."), {}).empty());
}

TEST(Validate, InconsistentWindow) {
  // The parser refuses empty windows, so build one directly.
  Rule r;
  r.head = Literal::atom({"P", {}});
  r.body.push_back(Literal::modal({ModalKind::BoxFuture, {2, LowerCmp::Geq, 1, UpperCmp::Leq}},
                                  Literal::atom({"Q", {}})));
  EXPECT_EQ(kinds(validate(Ontology{{r}}, {})), std::vector{ViolationKind::InconsistentWindow});
}

TEST(Validate, HeadComparisonAndDiamondHead) {
  Rule r;
  r.head = Literal::comparison({Term::variable("x"), ComparisonOp::Eq, Term::variable("x")});
  r.body.push_back(Literal::atom({"Q", {Term::variable("x")}}));
  EXPECT_EQ(kinds(validate(Ontology{{r}}, {})), std::vector{ViolationKind::HeadComparison});
  auto d = validate(parse_ontology("diamondplus[0,1] P(x) <- Q(x)."), {});
  EXPECT_EQ(kinds(d), std::vector{ViolationKind::DiamondInHead});
}

TEST(Validate, ArityClash) {
  auto v = validate(parse_ontology("P(x) <- Q(x).\nR(x) <- Q(x, x)."), {});
  EXPECT_EQ(kinds(v), std::vector{ViolationKind::ArityClash});
  auto w = validate(parse_ontology("P(x) <- Q(x)."), parse_data("Q(a, b) @ [0,1]."));
  EXPECT_EQ(kinds(w), std::vector{ViolationKind::ArityClash});
}

TEST(Validate, BadFacts) {
  Fact nonground{{"P", {Term::variable("x")}}, Interval::closed(TimePoint(0L), TimePoint(1L))};
  Fact empty{{"P", {Term::constant("a")}}, Interval::open(TimePoint(1L), TimePoint(1L))};
  EXPECT_EQ(kinds(validate({}, {nonground, empty})),
            (std::vector{ViolationKind::NonGroundFact, ViolationKind::EmptyFactInterval}));
  EXPECT_THROW(require_valid({}, {empty}), ValidationError);
}

TEST(Validate, ComparisonOnlyBody) {
  Rule r;
  r.head = Literal::atom({"P", {}});
  r.body.push_back(Literal::comparison({Term::constant("a"), ComparisonOp::Eq, Term::constant("a")}));
  EXPECT_EQ(kinds(validate(Ontology{{r}}, {})), std::vector{ViolationKind::NoBodyAtom});
}

TEST(ClassifyPredicates, WeatherSample) {
  auto data = parse_data("PositiveTemp(khys) @ [0,1].\nPrecipitation(khys) @ [0,1].");
  auto c = classify_predicates(parse_ontology(kWeather), data);
  EXPECT_TRUE(c.extensional.count("PositiveTemp"));
  EXPECT_FALSE(c.intensional.count("PositiveTemp"));
  EXPECT_TRUE(c.intensional.count("Rain"));
  EXPECT_FALSE(c.extensional.count("Rain"));
}

TEST(ClassifyPredicates, EmptyOntologyAndOverlap) {
  auto data = parse_data("Rain(a) @ [0,1].\nP @ [0,1].");
  auto c = classify_predicates({}, data);
  EXPECT_EQ(c.extensional, (std::set<std::string>{"P", "Rain"}));
  EXPECT_TRUE(c.intensional.empty());
  auto both = classify_predicates(parse_ontology("Rain(x) <- Wet(x)."), data);
  EXPECT_TRUE(both.extensional.count("Rain") && both.intensional.count("Rain"));
}

TEST(Ast, Helpers) {
  Ontology o = parse_ontology(kEngine);
  const Rule &r = o.rules[1];
  EXPECT_EQ(modal_depth(r.body[0]), 2u);
  EXPECT_EQ(innermost_atom(r.body[0])->predicate, "HighVibration");
  Ontology w = parse_ontology(kWeather);
  EXPECT_EQ(variables_of(w.rules[4]), (std::vector<std::string>{"x", "y", "z"}));
  auto ind = individuals(parse_data("P(b, a) @ [0,1].\nQ(c) @ [0,1].\nQ(a) @ [2,3]."));
  EXPECT_EQ(ind, (std::vector<std::string>{"a", "b", "c"}));
}
