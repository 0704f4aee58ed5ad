#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chronolog/ast.hpp"
#include "chronolog/errors.hpp"

namespace chronolog {

// Concrete syntax
// ---------------
//
//   % comment to end of line
//   Rain(x) <- PositiveTemp(x), Precipitation(x).
//   boxminus[0,1h] Hurricane(x) <- boxminus[0,1h] HurricaneForceWind(x).
//   SpreadRainCounty(x) <- LocationOf(x,y), LocationOf(x,z), y != z, Rain(y), Rain(z).
//   bottom <- Open(x), Closed(x).
//
// Predicates start with an upper-case letter or '_'. Inside a rule or query
// a term is a variable iff it is one lower-case letter optionally followed by
// digits (x, y2); every other term is a constant, lower-cased. Constants that
// would read as variables are written quoted: "x".
//
// Operators boxplus, boxminus, diamondplus, diamondminus take a window in
// interval notation: '[' means >= e, '(' means > e, ']' means <= d, ')' means
// < d. Distances accept the suffixes ms, s, min, h, d.
//
// Data files hold one fact per statement:
//   HurricaneForceWind(khys) @ (2015-11-11T08:55:00, 2015-11-11T09:55:00].
//
// Queries:  ExcessiveHeat(x) @ q

Ontology parse_ontology(std::string_view text);
std::vector<Fact> parse_data(std::string_view text);
/// With a signature, a known predicate used with the wrong arity is an error.
Query parse_query(std::string_view text, const Signature *signature = nullptr);

enum class TermContext { Rule, Data };

std::string to_string(const Term &t, TermContext ctx = TermContext::Rule);
std::string to_string(const Atom &a, TermContext ctx = TermContext::Rule);
std::string to_string(const MetricOperator &op);
std::string to_string(const Literal &l);
std::string to_string(const Rule &r);
std::string to_string(const Ontology &o);
std::string to_string(const Fact &f, TimeStyle style = TimeStyle::Seconds);
std::string to_string(const std::vector<Fact> &facts, TimeStyle style = TimeStyle::Seconds);
std::string to_string(const Query &q);

} // namespace chronolog
