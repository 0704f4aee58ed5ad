#include "chronolog/stratifier.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "chronolog/errors.hpp"

namespace chronolog {

namespace {

std::string join_cycle(const std::vector<std::string> &cycle) {
  std::string s;
  for (const std::string &p : cycle)
    s += (s.empty() ? "" : " -> ") + p;
  return s;
}

void add_literal_node(DependencyGraph &g, const Literal &l) {
  if (const Atom *a = innermost_atom(l))
    g.nodes.insert(a->predicate);
}

} // namespace

RecursionError::RecursionError(std::vector<std::string> cycle)
    : std::runtime_error("recursive dependency: " + join_cycle(cycle)), cycle_(std::move(cycle)) {}

DependencyGraph DependencyGraph::of(const Ontology &o) {
  DependencyGraph g;
  for (const Rule &r : o.rules) {
    const Atom *head = r.head ? innermost_atom(*r.head) : nullptr;
    if (head)
      g.edges[head->predicate];
    for (const Literal &l : r.body) {
      add_literal_node(g, l);
      const Atom *b = innermost_atom(l);
      if (!b)
        continue;
      if (head)
        g.edges[head->predicate].insert(b->predicate);
      else
        g.falsum_deps.insert(b->predicate);
    }
    if (head)
      g.nodes.insert(head->predicate);
  }
  return g;
}

DependencyGraph DependencyGraph::of(const NormalProgram &p) { return of(p.to_ontology()); }

std::string DependencyGraph::to_dot() const {
  std::string out = "digraph dependencies {\n";
  for (const std::string &n : nodes)
    out += "  \"" + n + "\";\n";
  for (const auto &[from, tos] : edges)
    for (const std::string &to : tos)
      out += "  \"" + from + "\" -> \"" + to + "\";\n";
  if (!falsum_deps.empty()) {
    out += "  \"bottom\" [shape=box];\n";
    for (const std::string &to : falsum_deps)
      out += "  \"bottom\" -> \"" + to + "\";\n";
  }
  return out + "}\n";
}

namespace {

const std::set<std::string> kNoEdges;

const std::set<std::string> &deps(const DependencyGraph &g, const std::string &n) {
  auto it = g.edges.find(n);
  return it == g.edges.end() ? kNoEdges : it->second;
}

[[noreturn]] void report_cycle(const DependencyGraph &g, const std::set<std::string> &remaining) {
  // Depth-first walk from the smallest remaining node; every remaining node
  // has a remaining successor, so the walk must revisit a node.
  std::vector<std::string> path;
  std::string cur = *remaining.begin();
  while (true) {
    auto seen = std::find(path.begin(), path.end(), cur);
    if (seen != path.end()) {
      std::vector<std::string> cycle(seen, path.end());
      cycle.push_back(cur);
      throw RecursionError(std::move(cycle));
    }
    path.push_back(cur);
    for (const std::string &next : deps(g, cur)) {
      if (remaining.count(next)) {
        cur = next;
        break;
      }
    }
  }
}

} // namespace

std::vector<std::string> check_nonrecursive(const DependencyGraph &g) {
  std::map<std::string, std::size_t> pending;
  std::map<std::string, std::vector<std::string>> dependents;
  for (const std::string &n : g.nodes) {
    pending[n] = deps(g, n).size();
    for (const std::string &d : deps(g, n))
      dependents[d].push_back(n);
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto &[n, count] : pending)
    if (count == 0)
      ready.push(n);
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string n = ready.top();
    ready.pop();
    order.push_back(n);
    for (const std::string &d : dependents[n])
      if (--pending[d] == 0)
        ready.push(d);
  }
  if (order.size() != g.nodes.size()) {
    std::set<std::string> remaining;
    for (const auto &[n, count] : pending)
      if (count > 0)
        remaining.insert(n);
    report_cycle(g, remaining);
  }
  return order;
}

std::vector<std::vector<std::string>> strata(const DependencyGraph &g) {
  std::vector<std::string> order = check_nonrecursive(g);
  std::map<std::string, std::size_t> level;
  std::vector<std::vector<std::string>> out;
  for (const std::string &n : order) {
    std::size_t l = 0;
    for (const std::string &d : deps(g, n))
      l = std::max(l, level[d] + 1);
    level[n] = l;
    if (out.size() <= l)
      out.resize(l + 1);
    out[l].push_back(n);
  }
  return out;
}

} // namespace chronolog
