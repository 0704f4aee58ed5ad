#include "chronolog/normalizer.hpp"

#include <algorithm>
#include <set>

#include "chronolog/errors.hpp"
#include "chronolog/parser.hpp"

namespace chronolog {

NormalRule::Shape NormalRule::shape() const {
  if (const auto *j = std::get_if<JoinRule>(&rule))
    return j->head ? Shape::Join : Shape::FalsumJoin;
  if (const auto *c = std::get_if<CopyRule>(&rule))
    return c->head ? Shape::Copy : Shape::FalsumCopy;
  if (std::holds_alternative<BoxHeadRule>(rule))
    return Shape::BoxHead;
  return Shape::BoxBody;
}

std::string NormalRule::head_predicate() const {
  return std::visit(
      [](const auto &r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, JoinRule> || std::is_same_v<T, CopyRule>)
          return r.head ? r.head->predicate : std::string();
        else
          return r.head.predicate;
      },
      rule);
}

std::vector<const Atom *> NormalRule::body_atoms() const {
  return std::visit(
      [](const auto &r) -> std::vector<const Atom *> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, JoinRule>)
          return {&r.left, &r.right};
        else
          return {&r.body};
      },
      rule);
}

namespace {

ModalKind box_kind(Direction d) {
  return d == Direction::Future ? ModalKind::BoxFuture : ModalKind::BoxPast;
}

std::optional<Literal> head_literal(const std::optional<Atom> &a) {
  if (!a)
    return std::nullopt;
  return Literal::atom(*a);
}

} // namespace

Rule NormalRule::to_rule() const {
  Rule out;
  std::visit(
      [&](const auto &r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, JoinRule>) {
          out.head = head_literal(r.head);
          out.body = {Literal::atom(r.left), Literal::atom(r.right)};
          for (const Comparison &c : r.filters)
            out.body.push_back(Literal::comparison(c));
        } else if constexpr (std::is_same_v<T, CopyRule>) {
          out.head = head_literal(r.head);
          out.body = {Literal::atom(r.body)};
          for (const Comparison &c : r.filters)
            out.body.push_back(Literal::comparison(c));
        } else if constexpr (std::is_same_v<T, BoxHeadRule>) {
          out.head = Literal::modal({box_kind(r.direction), r.window}, Literal::atom(r.head));
          out.body = {Literal::atom(r.body)};
        } else {
          out.head = Literal::atom(r.head);
          out.body = {Literal::modal({box_kind(r.direction), r.window}, Literal::atom(r.body))};
        }
      },
      rule);
  return out;
}

Ontology NormalProgram::to_ontology() const {
  Ontology o;
  for (const NormalRule &r : rules)
    o.rules.push_back(r.to_rule());
  return o;
}

namespace {

Literal strip(const Literal &l) {
  const Modal *m = l.as_modal();
  if (!m)
    return l;
  Literal inner = strip(*m->inner);
  if (inner.as_comparison())
    return inner;
  return Literal::modal(m->op, std::move(inner));
}

bool contains(const std::vector<std::string> &vs, const std::string &v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::vector<std::string> vars(const Atom &a) {
  std::vector<std::string> out;
  collect_variables(a, out);
  return out;
}

Atom atom_over(std::string name, const std::vector<std::string> &vs) {
  Atom a{std::move(name), {}};
  for (const std::string &v : vs)
    a.args.push_back(Term::variable(v));
  return a;
}

class Normalizer {
public:
  explicit Normalizer(const Ontology &o) {
    for (const Rule &r : o.rules) {
      if (r.head)
        note(*r.head);
      for (const Literal &l : r.body)
        note(l);
    }
  }

  NormalProgram run(const Ontology &o) {
    for (const Rule &r : o.rules)
      process(strip_modal_comparisons(r));
    return std::move(program_);
  }

private:
  void note(const Literal &l) {
    if (const Atom *a = innermost_atom(l))
      used_.insert(a->predicate);
  }

  void emit(NormalRule r) { program_.rules.push_back(std::move(r)); }

  Atom fresh(const std::vector<std::string> &vs, std::string defines) {
    std::string name;
    do
      name = std::string(kAuxPrefix) + std::to_string(++counter_);
    while (used_.count(name));
    used_.insert(name);
    program_.fresh.push_back({name, vs.size(), std::move(defines)});
    return atom_over(name, vs);
  }

  void process(const Rule &r) {
    if (r.head) {
      for (const Literal *cur = &*r.head; const Modal *m = cur->as_modal(); cur = m->inner.get())
        if (!is_box(m->op.kind))
          throw ValidationError("diamond operator in rule head: " + to_string(r));
    }
    if (auto n = as_normal_rule(r)) {
      emit(std::move(*n));
      return;
    }

    // P <- diamond[w] Q  becomes  box[w] P <- Q in the mirrored direction.
    if (r.head && r.head->as_atom() && r.body.size() == 1) {
      const Modal *m = r.body[0].as_modal();
      if (m && !is_box(m->op.kind) && m->inner->as_atom()) {
        Direction dir = direction_of(m->op.kind) == Direction::Past ? Direction::Future
                                                                      : Direction::Past;
        emit({BoxHeadRule{*r.head->as_atom(), dir, m->op.window, *m->inner->as_atom()}});
        return;
      }
    }

    std::vector<Atom> atoms;
    std::vector<Comparison> filters;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      const Literal &l = r.body[i];
      if (const Comparison *c = l.as_comparison()) {
        filters.push_back(*c);
      } else if (const Atom *a = l.as_atom()) {
        atoms.push_back(*a);
      } else {
        std::vector<std::string> context;
        if (r.head)
          collect_variables(*r.head, context);
        for (std::size_t j = 0; j < r.body.size(); ++j)
          if (j != i)
            collect_variables(r.body[j], context);
        std::vector<std::string> own, keep;
        collect_variables(l, own);
        for (const std::string &v : own)
          if (contains(context, v))
            keep.push_back(v);
        atoms.push_back(extract(l, keep));
      }
    }
    emit_head(r, atoms, filters);
  }

  // Replaces an operator literal by a fresh atom over `keep` and emits its
  // definition. Nested operands keep all their variables: projecting them
  // away below a box would change the meaning.
  Atom extract(const Literal &l, const std::vector<std::string> &keep) {
    const Modal &m = *l.as_modal();
    Atom operand;
    if (const Atom *a = m.inner->as_atom()) {
      operand = *a;
    } else {
      std::vector<std::string> all;
      collect_variables(*m.inner, all);
      operand = extract(*m.inner, all);
    }
    Atom f = fresh(keep, to_string(l));
    Direction dir = direction_of(m.op.kind);
    if (is_box(m.op.kind)) {
      emit({BoxBodyRule{f, dir, m.op.window, operand}});
    } else {
      // Some point of the window around t satisfies the operand exactly when
      // t lies in the mirrored box image of that point.
      Direction mirrored = dir == Direction::Past ? Direction::Future : Direction::Past;
      emit({BoxHeadRule{f, mirrored, m.op.window, operand}});
    }
    return f;
  }

  void emit_head(const Rule &r, const std::vector<Atom> &atoms,
                 const std::vector<Comparison> &filters) {
    if (!r.head || r.head->as_atom()) {
      std::optional<Atom> head;
      if (r.head)
        head = *r.head->as_atom();
      emit_conjunction(head, atoms, filters);
      return;
    }
    // Head is a chain of boxes over an atom.
    std::vector<std::string> head_vars;
    collect_variables(*r.head, head_vars);
    Atom source;
    if (atoms.size() == 1 && filters.empty()) {
      source = atoms[0];
    } else {
      std::string defines;
      for (const Literal &l : r.body)
        defines += (defines.empty() ? "" : ", ") + to_string(l);
      source = fresh(head_vars, defines);
      emit_conjunction(source, atoms, filters);
    }
    const Literal *cur = &*r.head;
    while (const Modal *m = cur->as_modal()) {
      const Literal &rest = *m->inner;
      Atom target = rest.as_atom() ? *rest.as_atom() : fresh(head_vars, to_string(rest));
      emit({BoxHeadRule{target, direction_of(m->op.kind), m->op.window, source}});
      source = target;
      cur = &rest;
    }
  }

  void emit_conjunction(const std::optional<Atom> &head, const std::vector<Atom> &atoms,
                        std::vector<Comparison> pending) {
    if (atoms.size() == 1) {
      emit({CopyRule{head, atoms[0], std::move(pending)}});
      return;
    }
    std::vector<std::string> head_vars;
    if (head)
      collect_variables(*head, head_vars);
    Atom left = atoms[0];
    for (std::size_t i = 1; i < atoms.size(); ++i) {
      const Atom &right = atoms[i];
      std::vector<std::string> bound = vars(left);
      collect_variables(right, bound);
      std::vector<Comparison> now;
      std::erase_if(pending, [&](const Comparison &c) {
        std::vector<std::string> cv;
        collect_variables(c, cv);
        bool ready = std::all_of(cv.begin(), cv.end(),
                                 [&](const std::string &v) { return contains(bound, v); });
        if (ready)
          now.push_back(c);
        return ready;
      });
      if (i + 1 == atoms.size()) {
        emit({JoinRule{head, left, right, std::move(now)}});
        return;
      }
      std::vector<std::string> needed = head_vars;
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        collect_variables(atoms[j], needed);
      for (const Comparison &c : pending)
        collect_variables(c, needed);
      std::vector<std::string> keep;
      for (const std::string &v : bound)
        if (contains(needed, v))
          keep.push_back(v);
      std::string defines = to_string(left) + ", " + to_string(right);
      Atom joined = fresh(keep, defines);
      emit({JoinRule{joined, left, right, std::move(now)}});
      left = joined;
    }
  }

  std::set<std::string> used_;
  int counter_ = 0;
  NormalProgram program_;
};

} // namespace

Rule strip_modal_comparisons(const Rule &r) {
  Rule out;
  if (r.head)
    out.head = strip(*r.head);
  for (const Literal &l : r.body)
    out.body.push_back(strip(l));
  return out;
}

std::optional<NormalRule> as_normal_rule(const Rule &r) {
  std::vector<const Literal *> positive;
  std::vector<Comparison> filters;
  for (const Literal &l : r.body) {
    if (const Comparison *c = l.as_comparison())
      filters.push_back(*c);
    else
      positive.push_back(&l);
  }
  const Atom *head_atom = r.head ? r.head->as_atom() : nullptr;
  if (r.falsum() || head_atom) {
    std::optional<Atom> head;
    if (head_atom)
      head = *head_atom;
    if (positive.size() == 2 && positive[0]->as_atom() && positive[1]->as_atom())
      return NormalRule{JoinRule{head, *positive[0]->as_atom(), *positive[1]->as_atom(), filters}};
    if (positive.size() == 1 && positive[0]->as_atom())
      return NormalRule{CopyRule{head, *positive[0]->as_atom(), filters}};
    if (head_atom && positive.size() == 1 && filters.empty()) {
      const Modal *m = positive[0]->as_modal();
      if (m && is_box(m->op.kind) && m->inner->as_atom())
        return NormalRule{BoxBodyRule{*head_atom, direction_of(m->op.kind), m->op.window,
                                      *m->inner->as_atom()}};
    }
    return std::nullopt;
  }
  const Modal *hm = r.head->as_modal();
  if (hm && is_box(hm->op.kind) && hm->inner->as_atom() && positive.size() == 1 &&
      filters.empty() && positive[0]->as_atom())
    return NormalRule{BoxHeadRule{*hm->inner->as_atom(), direction_of(hm->op.kind),
                                  hm->op.window, *positive[0]->as_atom()}};
  return std::nullopt;
}

NormalProgram normalize(const Ontology &o) { return Normalizer(o).run(o); }

} // namespace chronolog
