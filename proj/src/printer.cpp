#include <algorithm>

#include "chronolog/parser.hpp"

namespace chronolog {

namespace {

bool variable_shaped(const std::string &s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z')
    return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool bare_constant(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

const char *keyword(ModalKind k) {
  switch (k) {
  case ModalKind::BoxFuture:
    return "boxplus";
  case ModalKind::BoxPast:
    return "boxminus";
  case ModalKind::DiamondFuture:
    return "diamondplus";
  case ModalKind::DiamondPast:
    return "diamondminus";
  }
  return "?";
}

} // namespace

std::string to_string(const Term &t, TermContext ctx) {
  if (t.is_variable())
    return t.name;
  if (bare_constant(t.name) && (ctx == TermContext::Data || !variable_shaped(t.name)))
    return t.name;
  return quoted(t.name);
}

std::string to_string(const Atom &a, TermContext ctx) {
  if (a.args.empty())
    return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(a.args[i], ctx);
  }
  return out + ")";
}

std::string to_string(const MetricOperator &op) {
  const Window &w = op.window;
  std::string out = keyword(op.kind);
  out += w.lower == LowerCmp::Geq ? "[" : "(";
  out += format_rational(w.e) + "," + format_rational(w.d);
  out += w.upper == UpperCmp::Leq ? "]" : ")";
  return out;
}

std::string to_string(const Literal &l) {
  if (const Atom *a = l.as_atom())
    return to_string(*a);
  if (const Comparison *c = l.as_comparison())
    return to_string(c->lhs) + (c->op == ComparisonOp::Eq ? " = " : " != ") + to_string(c->rhs);
  const Modal &m = *l.as_modal();
  std::string inner = to_string(*m.inner);
  if (m.inner->as_comparison())
    inner = "(" + inner + ")";
  return to_string(m.op) + " " + inner;
}

std::string to_string(const Rule &r) {
  std::string out = r.head ? to_string(*r.head) : "bottom";
  out += " <- ";
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(r.body[i]);
  }
  return out + ".";
}

std::string to_string(const Ontology &o) {
  std::string out;
  for (const Rule &r : o.rules)
    out += to_string(r) + "\n";
  return out;
}

std::string to_string(const Fact &f, TimeStyle style) {
  return to_string(f.atom, TermContext::Data) + " @ " + to_string(f.interval, style) + ".";
}

std::string to_string(const std::vector<Fact> &facts, TimeStyle style) {
  std::string out;
  for (const Fact &f : facts)
    out += to_string(f, style) + "\n";
  return out;
}

std::string to_string(const Query &q) { return to_string(q.atom) + " @ " + q.interval_variable; }

} // namespace chronolog
