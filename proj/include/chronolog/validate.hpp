#pragma once

#include <string>
#include <vector>

#include "chronolog/ast.hpp"

namespace chronolog {

enum class ViolationKind {
  HeadComparison,    // (in)equality in a rule head
  UnsafeVariable,    // head or comparison variable not bound by a body atom
  NoBodyAtom,        // body consists of comparisons only
  ArityClash,        // predicate used with different arities
  InconsistentWindow,
  DiamondInHead,
  NonGroundFact,
  EmptyFactInterval,
};

struct Violation {
  ViolationKind kind;
  /// Index of the offending rule, or of the fact for fact violations.
  std::size_t index = 0;
  std::string message;
};

std::string to_string(ViolationKind k);

/// Static checks on an ontology and its data. Empty result means valid.
std::vector<Violation> validate(const Ontology &o, const std::vector<Fact> &data);

/// Arities of all predicates in o and data. First use wins on a clash.
Signature signature_of(const Ontology &o, const std::vector<Fact> &data);

/// Throws ValidationError listing every violation.
void require_valid(const Ontology &o, const std::vector<Fact> &data);

} // namespace chronolog
