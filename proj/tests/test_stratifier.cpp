#include <gtest/gtest.h>

#include <random>

#include "chronolog/errors.hpp"
#include "chronolog/parser.hpp"
#include "chronolog/stratifier.hpp"

using namespace chronolog;

namespace {

std::vector<std::string> cycle_of(const std::string &text) {
  try {
    check_nonrecursive(DependencyGraph::of(parse_ontology(text)));
  } catch (const RecursionError &e) {
    return e.cycle();
  }
  return {};
}

std::size_t position(const std::vector<std::string> &order, const std::string &p) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), p) - order.begin());
}

} // namespace

TEST(Stratifier, WeatherOrder) {
  Ontology o = parse_ontology(
      "Rain(x) <- PositiveTemp(x), Precipitation(x).\n"
      "SpreadRainCounty(x) <- LocationOf(x, y), LocationOf(x, z), y != z, Rain(y), Rain(z).\n");
  auto order = check_nonrecursive(DependencyGraph::of(o));
  EXPECT_LT(position(order, "PositiveTemp"), position(order, "Rain"));
  EXPECT_LT(position(order, "Precipitation"), position(order, "Rain"));
  EXPECT_LT(position(order, "Rain"), position(order, "SpreadRainCounty"));
  EXPECT_EQ(order.size(), 5u);
}

TEST(Stratifier, Cycles) {
  EXPECT_EQ(cycle_of("P <- Q.\nQ <- P."), (std::vector<std::string>{"P", "Q", "P"}));
  EXPECT_EQ(cycle_of("P <- P."), (std::vector<std::string>{"P", "P"}));
  EXPECT_EQ(cycle_of("A <- P.\nP <- boxplus[0,1] Q.\nQ <- diamondminus[0,1] P."),
            (std::vector<std::string>{"P", "Q", "P"}));
}

TEST(Stratifier, DeterministicTieBreak) {
  Ontology o = parse_ontology("Z <- B.\nY <- A.\nX <- Z, Y.");
  auto order = check_nonrecursive(DependencyGraph::of(o));
  EXPECT_EQ(order, (std::vector<std::string>{"A", "B", "Y", "Z", "X"}));
  auto levels = strata(DependencyGraph::of(o));
  EXPECT_EQ(levels, (std::vector<std::vector<std::string>>{{"A", "B"}, {"Y", "Z"}, {"X"}}));
}

TEST(Stratifier, FalsumRulesAreNotNodes) {
  DependencyGraph g = DependencyGraph::of(parse_ontology("bottom <- P, Q.\nP <- R."));
  EXPECT_EQ(g.nodes, (std::set<std::string>{"P", "Q", "R"}));
  EXPECT_EQ(g.falsum_deps, (std::set<std::string>{"P", "Q"}));
  std::string dot = g.to_dot();
  EXPECT_NE(dot.find("\"P\" -> \"R\""), std::string::npos);
  EXPECT_NE(dot.find("\"bottom\" -> \"Q\""), std::string::npos);
}

TEST(Stratifier, AgreesWithTransitiveClosure) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> size(1, 6), coin(0, 99);
  for (int n = 0; n < 2000; ++n) {
    int k = size(rng);
    int density = coin(rng) % 40;
    DependencyGraph g;
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    auto name = [](int i) { return std::string(1, static_cast<char>('A' + i)); };
    for (int i = 0; i < k; ++i)
      g.nodes.insert(name(i));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (coin(rng) < density) {
          g.edges[name(i)].insert(name(j));
          reach[i][j] = true;
        }
    for (int m = 0; m < k; ++m)
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (reach[i][m] && reach[m][j])
            reach[i][j] = true;
    bool cyclic = false;
    for (int i = 0; i < k; ++i)
      cyclic = cyclic || reach[i][i];
    try {
      auto order = check_nonrecursive(g);
      ASSERT_FALSE(cyclic);
      for (const auto &[from, tos] : g.edges)
        for (const std::string &to : tos)
          EXPECT_LT(position(order, to), position(order, from));
    } catch (const RecursionError &e) {
      ASSERT_TRUE(cyclic);
      const auto &c = e.cycle();
      ASSERT_GE(c.size(), 2u);
      EXPECT_EQ(c.front(), c.back());
      for (std::size_t i = 0; i + 1 < c.size(); ++i)
        EXPECT_TRUE(g.edges[c[i]].count(c[i + 1]));
    }
  }
}
