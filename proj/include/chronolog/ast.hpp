#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chronolog/interval.hpp"

namespace chronolog {

struct Term {
  enum class Kind : unsigned char { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string name;

  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term &, const Term &) = default;
  friend auto operator<=>(const Term &, const Term &) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool ground() const;

  friend bool operator==(const Atom &, const Atom &) = default;
};

enum class ComparisonOp : unsigned char { Eq, Neq };

struct Comparison {
  Term lhs;
  ComparisonOp op = ComparisonOp::Eq;
  Term rhs;

  friend bool operator==(const Comparison &, const Comparison &) = default;
};

enum class ModalKind : unsigned char { BoxFuture, BoxPast, DiamondFuture, DiamondPast };

inline bool is_box(ModalKind k) { return k == ModalKind::BoxFuture || k == ModalKind::BoxPast; }
inline Direction direction_of(ModalKind k) {
  return k == ModalKind::BoxFuture || k == ModalKind::DiamondFuture ? Direction::Future
                                                                    : Direction::Past;
}

struct MetricOperator {
  ModalKind kind = ModalKind::BoxFuture;
  Window window;

  friend bool operator==(const MetricOperator &, const MetricOperator &) = default;
};

struct Literal;

/// Operator applied to a literal. The operand is shared and immutable.
struct Modal {
  MetricOperator op;
  std::shared_ptr<const Literal> inner;

  friend bool operator==(const Modal &a, const Modal &b);
};

struct Literal {
  std::variant<Comparison, Atom, Modal> node;

  static Literal atom(Atom a) { return {std::move(a)}; }
  static Literal comparison(Comparison c) { return {std::move(c)}; }
  static Literal modal(MetricOperator op, Literal inner) {
    return {Modal{op, std::make_shared<const Literal>(std::move(inner))}};
  }

  const Atom *as_atom() const { return std::get_if<Atom>(&node); }
  const Comparison *as_comparison() const { return std::get_if<Comparison>(&node); }
  const Modal *as_modal() const { return std::get_if<Modal>(&node); }

  friend bool operator==(const Literal &, const Literal &) = default;
};

/// Horn clause. A missing head is falsum.
struct Rule {
  std::optional<Literal> head;
  std::vector<Literal> body;

  bool falsum() const { return !head.has_value(); }

  friend bool operator==(const Rule &, const Rule &) = default;
};

struct Ontology {
  std::vector<Rule> rules;

  friend bool operator==(const Ontology &, const Ontology &) = default;
};

struct Fact {
  Atom atom;
  Interval interval;

  friend bool operator==(const Fact &, const Fact &) = default;
};

struct Query {
  Atom atom;
  std::string interval_variable = "q";

  friend bool operator==(const Query &, const Query &) = default;
};

/// Predicate name -> arity.
using Signature = std::map<std::string, std::size_t>;

// Traversal helpers.

/// The atom at the bottom of a chain of operators, or null for comparisons.
const Atom *innermost_atom(const Literal &l);
/// Variables of a literal in order of first occurrence.
void collect_variables(const Literal &l, std::vector<std::string> &out);
void collect_variables(const Atom &a, std::vector<std::string> &out);
void collect_variables(const Comparison &c, std::vector<std::string> &out);
std::vector<std::string> variables_of(const Rule &r);
/// Number of nested operators above the innermost literal.
std::size_t modal_depth(const Literal &l);

/// Predicates occurring in facts and in rule heads respectively.
struct PredicateClasses {
  std::set<std::string> extensional;
  std::set<std::string> intensional;
};
PredicateClasses classify_predicates(const Ontology &o, const std::vector<Fact> &data);

/// Constants occurring in the data, sorted.
std::vector<std::string> individuals(const std::vector<Fact> &data);

} // namespace chronolog
