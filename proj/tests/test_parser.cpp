#include <gtest/gtest.h>

#include <random>

#include "chronolog/errors.hpp"
#include "chronolog/parser.hpp"
#include "support/point_oracle.hpp"
#include "support/random_program.hpp"

using namespace chronolog;
using chronolog::testing::iv;
using chronolog::testing::q;

namespace {

SourcePosition error_at(const std::string &text, bool data = false) {
  try {
    if (data)
      parse_data(text);
    else
      parse_ontology(text);
  } catch (const ParseError &e) {
    return e.position();
  }
  ADD_FAILURE() << "no error for: " << text;
  return {};
}

} // namespace

TEST(ParseOntology, RainRule) {
  Ontology o = parse_ontology("Rain(x) <- PositiveTemp(x), Precipitation(x).");
  ASSERT_EQ(o.rules.size(), 1u);
  const Rule &r = o.rules[0];
  EXPECT_EQ(*r.head, Literal::atom({"Rain", {Term::variable("x")}}));
  ASSERT_EQ(r.body.size(), 2u);
  EXPECT_EQ(r.body[0], Literal::atom({"PositiveTemp", {Term::variable("x")}}));
  EXPECT_EQ(r.body[1], Literal::atom({"Precipitation", {Term::variable("x")}}));
}

TEST(ParseOntology, HurricaneRule) {
  Ontology o = parse_ontology("boxminus[0,1h] Hurricane(x) <- boxminus[0,1h] HurricaneForceWind(x).");
  MetricOperator op{ModalKind::BoxPast, {q(0), LowerCmp::Geq, q(3600), UpperCmp::Leq}};
  EXPECT_EQ(*o.rules[0].head, Literal::modal(op, Literal::atom({"Hurricane", {Term::variable("x")}})));
  EXPECT_EQ(o.rules[0].body[0],
            Literal::modal(op, Literal::atom({"HurricaneForceWind", {Term::variable("x")}})));
}

TEST(ParseOntology, WindowBracketsBijective) {
  struct Case {
    const char *text;
    LowerCmp lower;
    UpperCmp upper;
  } cases[] = {{"[1,2]", LowerCmp::Geq, UpperCmp::Leq},
               {"[1,2)", LowerCmp::Geq, UpperCmp::Lt},
               {"(1,2]", LowerCmp::Gt, UpperCmp::Leq},
               {"(1,2)", LowerCmp::Gt, UpperCmp::Lt}};
  for (const Case &c : cases) {
    Ontology o = parse_ontology(std::string("P <- diamondplus") + c.text + " Q.");
    const Window &w = o.rules[0].body[0].as_modal()->op.window;
    EXPECT_EQ(w.lower, c.lower);
    EXPECT_EQ(w.upper, c.upper);
    EXPECT_EQ(to_string(o.rules[0]), std::string("P <- diamondplus") + c.text + " Q.");
  }
}

TEST(ParseOntology, EmptyWindowRejected) {
  SourcePosition p = error_at("P <- boxplus(2,1] Q.");
  EXPECT_EQ(p.line, 1);
  EXPECT_EQ(p.column, 13);
}

TEST(ParseOntology, TermsAndFalsum) {
  Ontology o = parse_ontology("% comment\nbottom <- P(x, khys, \"y\", x1, Ellis), x != khys.\n");
  const Rule &r = o.rules[0];
  EXPECT_TRUE(r.falsum());
  const Atom &a = *r.body[0].as_atom();
  EXPECT_EQ(a.args[0], Term::variable("x"));
  EXPECT_EQ(a.args[1], Term::constant("khys"));
  EXPECT_EQ(a.args[2], Term::constant("y"));
  EXPECT_EQ(a.args[3], Term::variable("x1"));
  EXPECT_EQ(a.args[4], Term::constant("ellis"));
  EXPECT_EQ(r.body[1].as_comparison()->op, ComparisonOp::Neq);
}

TEST(ParseOntology, ErrorPositions) {
  SourcePosition p = error_at("P(x) <- Q(x).\nR(x) <- Q(x)\nS <- T.");
  EXPECT_EQ(p.line, 3);
  EXPECT_EQ(p.column, 1);
  SourcePosition b = error_at("P(x) <- boxplus[0,1qq] Q(x).");
  EXPECT_EQ(b.line, 1);
  EXPECT_EQ(b.column, 20);
}

TEST(ParseData, Facts) {
  auto facts = parse_data(
      "HurricaneForceWind(khys) @ (2015-11-11T08:55:00, 2015-11-11T09:55:00].\n"
      "LocationOf(ellis, khys) @ (-inf, +inf).\n"
      "Flag @ [1/3, 2.5].");
  ASSERT_EQ(facts.size(), 3u);
  EXPECT_EQ(facts[0].interval,
            Interval(TimePoint(q(1447232100)), Bound::Open, TimePoint(q(1447235700)), Bound::Closed));
  EXPECT_EQ(facts[1].interval, Interval::everything());
  EXPECT_EQ(facts[1].atom.args[0], Term::constant("ellis"));
  EXPECT_EQ(facts[2].interval, Interval::closed(TimePoint(q(1, 3)), TimePoint(q(5, 2))));
}

TEST(ParseData, Rejections) {
  SourcePosition p = error_at("P(a) @ (3,3).", true);
  EXPECT_EQ(p.line, 1);
  EXPECT_NO_THROW(parse_data("P(x) @ [0,1]."));  // every data term is a constant
  EXPECT_EQ(parse_data("P(x) @ [0,1].")[0].atom.args[0], Term::constant("x"));
  error_at("P(a) @ [0,1]", true);
  error_at("P(a) [0,1].", true);
}

TEST(ParseQuery, Examples) {
  Query a = parse_query("ExcessiveHeat(x) @ q");
  EXPECT_EQ(a.atom, (Atom{"ExcessiveHeat", {Term::variable("x")}}));
  EXPECT_EQ(a.interval_variable, "q");
  Query g = parse_query("Hurricane(khys) @ q");
  EXPECT_TRUE(g.atom.ground());
  Signature sig{{"Rain", 1}};
  EXPECT_THROW(parse_query("Rain(x, y) @ q", &sig), ParseError);
  EXPECT_NO_THROW(parse_query("Unknown(x, y) @ q", &sig));
}

TEST(RoundTrip, SampleOntologies) {
  for (const char *text :
       {"Rain(x) <- PositiveTemp(x), Precipitation(x).\n",
        "boxminus[0,3600] Hurricane(x) <- boxminus[0,3600] HurricaneForceWind(x).\n",
        "SmoothShutDown <- IdleRPM, boxminus(0,900) IntermRPM, diamondminus[900,1500] RunningRPM.\n",
        "ConsHighVibration <- boxminus[0,50] diamondminus(0,10] HighVibration.\n",
        "bottom <- P(x, \"y\"), x = \"y\".\n",
        "P <- boxplus[0,1] (x = y), Q(x, y).\n"}) {
    Ontology o = parse_ontology(text);
    EXPECT_EQ(to_string(o), text);
    EXPECT_EQ(parse_ontology(to_string(o)), o);
  }
}

TEST(RoundTrip, RandomPrograms) {
  chronolog::testing::RandomShape shape;
  shape.nesting = true;
  chronolog::testing::ProgramGenerator gen(99, shape);
  for (int n = 0; n < 500; ++n) {
    auto inst = gen.next();
    std::string text = to_string(inst.program);
    Ontology back = parse_ontology(text);
    ASSERT_EQ(back, inst.program) << text;
    EXPECT_EQ(to_string(back), text);
    for (TimeStyle style : {TimeStyle::Seconds, TimeStyle::Iso})
      ASSERT_EQ(parse_data(to_string(inst.data, style)), inst.data);
    for (const Query &qu : inst.queries)
      EXPECT_EQ(parse_query(to_string(qu)), qu);
  }
}

TEST(Fuzz, MutatedInputsFailCleanly) {
  std::mt19937_64 rng(1234);
  const std::string seeds[] = {
      "boxminus[0,24h] ExcessiveHeat(x) <- boxminus[0,24h] TempAbove24(x), diamondminus[0,24h] TempAbove41(x).",
      "SpreadRainCounty(x) <- LocationOf(x, y), LocationOf(x, z), y != z, Rain(y), Rain(z).",
      "HurricaneForceWind(khys) @ (2015-11-11T08:55:00, 2015-11-11T09:55:00].",
  };
  std::uniform_int_distribution<int> byte(0, 255), op(0, 2);
  for (int n = 0; n < 2000; ++n) {
    std::string s = seeds[n % 3];
    for (int k = 0; k < 3; ++k) {
      std::size_t pos = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
      switch (op(rng)) {
      case 0:
        s.insert(s.begin() + static_cast<long>(pos), static_cast<char>(byte(rng)));
        break;
      case 1:
        if (pos < s.size())
          s.erase(pos, 1);
        break;
      default:
        if (pos < s.size())
          s[pos] = static_cast<char>(byte(rng));
      }
    }
    for (int which = 0; which < 3; ++which) {
      try {
        if (which == 0)
          parse_ontology(s);
        else if (which == 1)
          parse_data(s);
        else
          parse_query(s);
      } catch (const ParseError &e) {
        EXPECT_GE(e.position().line, 1);
        EXPECT_GE(e.position().column, 1);
      }
    }
  }
}

TEST(Fuzz, DeepNestingIsRejected) {
  std::string deep;
  for (int i = 0; i < 5000; ++i)
    deep += "boxplus[0,1] ";
  EXPECT_THROW(parse_ontology("P <- " + deep + "Q."), ParseError);
  std::string parens(5000, '(');
  EXPECT_THROW(parse_ontology("P <- " + parens + "Q."), ParseError);
}
