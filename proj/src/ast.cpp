#include "chronolog/ast.hpp"

#include <algorithm>

namespace chronolog {

bool Atom::ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term &t) { return t.is_variable(); });
}

bool operator==(const Modal &a, const Modal &b) {
  if (!(a.op == b.op))
    return false;
  if (a.inner == b.inner)
    return true;
  return a.inner && b.inner && *a.inner == *b.inner;
}

const Atom *innermost_atom(const Literal &l) {
  const Literal *cur = &l;
  while (const Modal *m = cur->as_modal())
    cur = m->inner.get();
  return cur->as_atom();
}

namespace {
void add_var(const Term &t, std::vector<std::string> &out) {
  if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end())
    out.push_back(t.name);
}
} // namespace

void collect_variables(const Atom &a, std::vector<std::string> &out) {
  for (const Term &t : a.args)
    add_var(t, out);
}

void collect_variables(const Comparison &c, std::vector<std::string> &out) {
  add_var(c.lhs, out);
  add_var(c.rhs, out);
}

void collect_variables(const Literal &l, std::vector<std::string> &out) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Modal>)
          collect_variables(*n.inner, out);
        else
          collect_variables(n, out);
      },
      l.node);
}

std::vector<std::string> variables_of(const Rule &r) {
  std::vector<std::string> out;
  if (r.head)
    collect_variables(*r.head, out);
  for (const Literal &l : r.body)
    collect_variables(l, out);
  return out;
}

std::size_t modal_depth(const Literal &l) {
  std::size_t depth = 0;
  const Literal *cur = &l;
  while (const Modal *m = cur->as_modal()) {
    ++depth;
    cur = m->inner.get();
  }
  return depth;
}

PredicateClasses classify_predicates(const Ontology &o, const std::vector<Fact> &data) {
  PredicateClasses out;
  for (const Fact &f : data)
    out.extensional.insert(f.atom.predicate);
  for (const Rule &r : o.rules)
    if (r.head)
      if (const Atom *a = innermost_atom(*r.head))
        out.intensional.insert(a->predicate);
  return out;
}

std::vector<std::string> individuals(const std::vector<Fact> &data) {
  std::set<std::string> seen;
  for (const Fact &f : data)
    for (const Term &t : f.atom.args)
      seen.insert(t.name);
  return {seen.begin(), seen.end()};
}

} // namespace chronolog
