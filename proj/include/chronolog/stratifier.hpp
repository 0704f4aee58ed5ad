#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "chronolog/ast.hpp"
#include "chronolog/normalizer.hpp"

namespace chronolog {

/// P -> Q whenever some rule has P in its head and Q in its body.
struct DependencyGraph {
  std::set<std::string> nodes;
  std::map<std::string, std::set<std::string>> edges;
  /// Body predicates of falsum rules; not part of the ordering.
  std::set<std::string> falsum_deps;

  static DependencyGraph of(const Ontology &o);
  static DependencyGraph of(const NormalProgram &p);

  /// Graph in DOT syntax; falsum rules point from a node named "bottom".
  std::string to_dot() const;
};

/// Topological order, dependencies first, ties broken by name. Throws
/// RecursionError with a witness cycle.
std::vector<std::string> check_nonrecursive(const DependencyGraph &g);

/// Groups the order into levels: every predicate depends only on predicates
/// in earlier levels.
std::vector<std::vector<std::string>> strata(const DependencyGraph &g);

} // namespace chronolog
