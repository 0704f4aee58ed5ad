#include "chronolog/validate.hpp"

#include <algorithm>

#include "chronolog/errors.hpp"

namespace chronolog {

std::string to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::HeadComparison:
    return "head-comparison";
  case ViolationKind::UnsafeVariable:
    return "unsafe-variable";
  case ViolationKind::NoBodyAtom:
    return "no-body-atom";
  case ViolationKind::ArityClash:
    return "arity-clash";
  case ViolationKind::InconsistentWindow:
    return "inconsistent-window";
  case ViolationKind::DiamondInHead:
    return "diamond-in-head";
  case ViolationKind::NonGroundFact:
    return "non-ground-fact";
  case ViolationKind::EmptyFactInterval:
    return "empty-fact-interval";
  }
  return "unknown";
}

namespace {

class Checker {
public:
  explicit Checker(std::vector<Violation> &out) : out_(out) {}

  void note_arity(const Atom &a, std::size_t index) {
    auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
    if (!inserted && it->second != a.arity())
      out_.push_back({ViolationKind::ArityClash, index,
                      a.predicate + " used with arity " + std::to_string(a.arity()) +
                          " and " + std::to_string(it->second)});
  }

  void walk(const Literal &l, std::size_t index, bool in_head) {
    const Literal *cur = &l;
    while (const Modal *m = cur->as_modal()) {
      if (!m->op.window.consistent())
        out_.push_back({ViolationKind::InconsistentWindow, index,
                        "window [" + format_rational(m->op.window.e) + "," +
                            format_rational(m->op.window.d) + "] contains no point"});
      if (in_head && !is_box(m->op.kind))
        out_.push_back({ViolationKind::DiamondInHead, index, "diamond operator in rule head"});
      cur = m->inner.get();
    }
    if (const Atom *a = cur->as_atom())
      note_arity(*a, index);
    else if (in_head)
      out_.push_back({ViolationKind::HeadComparison, index, "comparison in rule head"});
  }

  Signature arity_;

private:
  std::vector<Violation> &out_;
};

} // namespace

std::vector<Violation> validate(const Ontology &o, const std::vector<Fact> &data) {
  std::vector<Violation> out;
  Checker check(out);
  for (std::size_t i = 0; i < o.rules.size(); ++i) {
    const Rule &r = o.rules[i];
    if (r.head)
      check.walk(*r.head, i, true);
    std::vector<std::string> bound;
    bool has_atom = false;
    for (const Literal &l : r.body) {
      check.walk(l, i, false);
      if (const Atom *a = innermost_atom(l)) {
        has_atom = true;
        collect_variables(*a, bound);
      }
    }
    if (!has_atom)
      out.push_back({ViolationKind::NoBodyAtom, i, "rule body has no atom"});
    std::vector<std::string> needed;
    if (r.head)
      collect_variables(*r.head, needed);
    for (const Literal &l : r.body)
      if (!innermost_atom(l))
        collect_variables(l, needed);
    for (const std::string &v : needed)
      if (std::find(bound.begin(), bound.end(), v) == bound.end())
        out.push_back({ViolationKind::UnsafeVariable, i,
                       "variable " + v + " does not occur in a body atom"});
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Fact &f = data[i];
    check.note_arity(f.atom, i);
    if (!f.atom.ground())
      out.push_back({ViolationKind::NonGroundFact, i, "fact " + f.atom.predicate + " has variables"});
    if (f.interval.empty())
      out.push_back({ViolationKind::EmptyFactInterval, i,
                     "fact " + f.atom.predicate + " has an empty interval"});
  }
  return out;
}

Signature signature_of(const Ontology &o, const std::vector<Fact> &data) {
  std::vector<Violation> ignored;
  Checker check(ignored);
  for (std::size_t i = 0; i < o.rules.size(); ++i) {
    if (o.rules[i].head)
      check.walk(*o.rules[i].head, i, true);
    for (const Literal &l : o.rules[i].body)
      check.walk(l, i, false);
  }
  for (const Fact &f : data)
    check.note_arity(f.atom, 0);
  return check.arity_;
}

void require_valid(const Ontology &o, const std::vector<Fact> &data) {
  std::vector<Violation> v = validate(o, data);
  if (v.empty())
    return;
  std::string msg;
  for (const Violation &x : v) {
    if (!msg.empty())
      msg += "\n";
    msg += to_string(x.kind) + " (#" + std::to_string(x.index + 1) + "): " + x.message;
  }
  throw ValidationError(msg);
}

} // namespace chronolog
