#pragma once

#include <string>
#include <variant>
#include <vector>

#include "chronolog/ast.hpp"

namespace chronolog {

/// Head <- Left ∧ Right, filtered by (in)equalities. A falsum join has no head.
struct JoinRule {
  std::optional<Atom> head;
  Atom left;
  Atom right;
  std::vector<Comparison> filters;

  friend bool operator==(const JoinRule &, const JoinRule &) = default;
};

/// Head <- Body with optional filters (degenerate join). No head means falsum.
struct CopyRule {
  std::optional<Atom> head;
  Atom body;
  std::vector<Comparison> filters;

  friend bool operator==(const CopyRule &, const CopyRule &) = default;
};

/// boxplus/boxminus[w] Head <- Body.
struct BoxHeadRule {
  Atom head;
  Direction direction = Direction::Future;
  Window window;
  Atom body;

  friend bool operator==(const BoxHeadRule &, const BoxHeadRule &) = default;
};

/// Head <- boxplus/boxminus[w] Body.
struct BoxBodyRule {
  Atom head;
  Direction direction = Direction::Future;
  Window window;
  Atom body;

  friend bool operator==(const BoxBodyRule &, const BoxBodyRule &) = default;
};

struct NormalRule {
  enum class Shape { Join, FalsumJoin, BoxHead, BoxBody, Copy, FalsumCopy };

  std::variant<JoinRule, CopyRule, BoxHeadRule, BoxBodyRule> rule;

  Shape shape() const;
  /// Head predicate, or empty for falsum rules.
  std::string head_predicate() const;
  std::vector<const Atom *> body_atoms() const;
  Rule to_rule() const;

  friend bool operator==(const NormalRule &, const NormalRule &) = default;
};

/// Auxiliary predicate introduced by normalization.
struct FreshSymbol {
  std::string name;
  std::size_t arity = 0;
  /// The literal or conjunction it stands for, in concrete syntax.
  std::string defines;
};

struct NormalProgram {
  std::vector<NormalRule> rules;
  std::vector<FreshSymbol> fresh;

  Ontology to_ontology() const;
};

/// Prefix reserved for auxiliary predicates.
inline constexpr std::string_view kAuxPrefix = "_aux";

/// Replaces operators applied to (in)equalities by the bare comparison.
Rule strip_modal_comparisons(const Rule &r);

/// Rewrites a valid ontology without diamonds in heads into normal rules.
/// The result is a conservative extension: answers over the original
/// predicates are unchanged. Throws ValidationError on diamonds in heads.
NormalProgram normalize(const Ontology &o);

/// The normal shape a rule already has, if any.
std::optional<NormalRule> as_normal_rule(const Rule &r);

} // namespace chronolog
