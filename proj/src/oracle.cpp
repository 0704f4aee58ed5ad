#include "chronolog/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "chronolog/errors.hpp"
#include "chronolog/validate.hpp"

namespace chronolog::oracle {

namespace {

// --- Point-set helpers written directly on endpoints ----------------------

struct End {
  TimePoint at;
  bool closed;
};

bool member(const Interval &i, const TimePoint &t) {
  bool lo_ok = i.lo_bound() == Bound::Closed ? !(t < i.lo()) : i.lo() < t;
  bool hi_ok = i.hi_bound() == Bound::Closed ? !(i.hi() < t) : t < i.hi();
  return t.finite() && lo_ok && hi_ok;
}

bool nonempty(const End &lo, const End &hi) {
  if (lo.at < hi.at)
    return true;
  return lo.at == hi.at && lo.at.finite() && lo.closed && hi.closed;
}

End tighter_lo(const End &a, const End &b) {
  if (a.at < b.at)
    return b;
  if (b.at < a.at)
    return a;
  return {a.at, a.closed && b.closed};
}

End tighter_hi(const End &a, const End &b) {
  if (a.at < b.at)
    return a;
  if (b.at < a.at)
    return b;
  return {a.at, a.closed && b.closed};
}

End lo_of(const Interval &i) { return {i.lo(), i.lo_bound() == Bound::Closed}; }
End hi_of(const Interval &i) { return {i.hi(), i.hi_bound() == Bound::Closed}; }

// a ∪ b is a single interval.
bool overlap_or_touch(const Interval &a, const Interval &b) {
  if (nonempty(tighter_lo(lo_of(a), lo_of(b)), tighter_hi(hi_of(a), hi_of(b))))
    return true;
  if (a.hi() == b.lo() && a.hi().finite())
    return a.hi_bound() == Bound::Closed || b.lo_bound() == Bound::Closed;
  if (b.hi() == a.lo() && b.hi().finite())
    return b.hi_bound() == Bound::Closed || a.lo_bound() == Bound::Closed;
  return false;
}

// Every point of inner lies in outer.
bool within(const Interval &inner, const Interval &outer) {
  bool lo_ok = outer.lo() < inner.lo() ||
               (outer.lo() == inner.lo() &&
                (outer.lo_bound() == Bound::Closed || inner.lo_bound() == Bound::Open));
  bool hi_ok = inner.hi() < outer.hi() ||
               (outer.hi() == inner.hi() &&
                (outer.hi_bound() == Bound::Closed || inner.hi_bound() == Bound::Open));
  return lo_ok && hi_ok;
}

bool is_nonempty(const Interval &i) { return nonempty(lo_of(i), hi_of(i)); }

} // namespace

std::vector<Interval> naive_closure(const std::vector<Interval> &table) {
  std::vector<Interval> base;
  for (const Interval &i : table)
    if (is_nonempty(i) && std::find(base.begin(), base.end(), i) == base.end())
      base.push_back(i);
  std::vector<Interval> closure = base;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Interval> current = closure;
    for (const Interval &q : base) {
      for (const Interval &c : current) {
        if (q.hi() < c.hi() || !overlap_or_touch(q, c))
          continue;
        Interval joined(c.lo(), c.lo_bound(), q.hi(), q.hi_bound());
        if (std::find(closure.begin(), closure.end(), joined) == closure.end()) {
          closure.push_back(joined);
          changed = true;
        }
      }
    }
  }
  return closure;
}

std::vector<Interval> maximal_elements(const std::vector<Interval> &items) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < items.size() && !dominated; ++j)
      dominated = j != i && !(items[i] == items[j]) && within(items[i], items[j]);
    if (!dominated && std::find(out.begin(), out.end(), items[i]) == out.end())
      out.push_back(items[i]);
  }
  std::sort(out.begin(), out.end(), [](const Interval &a, const Interval &b) {
    if (a.lo() != b.lo())
      return a.lo() < b.lo();
    return a.lo_bound() == Bound::Closed && b.lo_bound() == Bound::Open;
  });
  return out;
}

// --- Naive model -----------------------------------------------------------

namespace {

std::vector<const Modal *> operator_chain(const Literal &l) {
  std::vector<const Modal *> out;
  const Literal *cur = &l;
  while (const Modal *m = cur->as_modal()) {
    out.push_back(m);
    cur = m->inner.get();
  }
  return out;
}

void literal_constants(const Literal &l, std::set<std::string> &out) {
  const Literal *cur = &l;
  while (const Modal *m = cur->as_modal())
    cur = m->inner.get();
  auto add = [&](const Term &t) {
    if (!t.is_variable())
      out.insert(t.name);
  };
  if (const Atom *a = cur->as_atom())
    std::for_each(a->args.begin(), a->args.end(), add);
  else if (const Comparison *c = cur->as_comparison()) {
    add(c->lhs);
    add(c->rhs);
  }
}

void literal_windows(const Literal &l, std::vector<Rational> &shifts) {
  for (const Modal *m : operator_chain(l)) {
    for (const Rational &x : {m->op.window.e, m->op.window.d}) {
      shifts.push_back(x);
      shifts.push_back(-x);
    }
  }
}

// Longest chain of operators a derivation of each predicate can pass through.
class DepthCounter {
public:
  explicit DepthCounter(const Ontology &o) : o_(o) {}

  std::size_t body_depth(const Rule &r) {
    std::size_t body = 0;
    for (const Literal &l : r.body) {
      const Atom *a = innermost_atom(l);
      body = std::max(body, modal_depth(l) + (a ? depth(a->predicate) : 0));
    }
    return body;
  }

  std::size_t depth(const std::string &p) {
    if (auto it = done_.find(p); it != done_.end())
      return it->second;
    if (active_.count(p))
      throw RecursionError({p, p});
    active_.insert(p);
    std::size_t best = 0;
    for (const Rule &r : o_.rules) {
      if (!r.head || innermost_atom(*r.head)->predicate != p)
        continue;
      best = std::max(best, modal_depth(*r.head) + body_depth(r));
    }
    active_.erase(p);
    done_[p] = best;
    return best;
  }

private:
  const Ontology &o_;
  std::map<std::string, std::size_t> done_;
  std::set<std::string> active_;
};

} // namespace

NaiveModel::NaiveModel(Ontology program, std::vector<Fact> data)
    : program_(std::move(program)), data_(std::move(data)) {
  if (data_.size() > kMaxFacts || program_.rules.size() > kMaxRules)
    throw std::invalid_argument("oracle input too large: at most " + std::to_string(kMaxFacts) +
                                " facts and " + std::to_string(kMaxRules) + " rules");

  std::set<std::string> constants;
  for (const Fact &f : data_)
    for (const Term &t : f.atom.args)
      constants.insert(t.name);
  std::vector<Rational> shifts;
  std::size_t depth = 0;
  DepthCounter counter(program_);
  for (const Rule &r : program_.rules) {
    if (r.head) {
      literal_constants(*r.head, constants);
      literal_windows(*r.head, shifts);
      depth = std::max(depth, counter.depth(innermost_atom(*r.head)->predicate));
    } else {
      depth = std::max(depth, counter.body_depth(r));
    }
    for (const Literal &l : r.body) {
      literal_constants(l, constants);
      literal_windows(l, shifts);
    }
  }
  domain_.assign(constants.begin(), constants.end());

  std::set<Rational> points;
  for (const Fact &f : data_)
    for (const TimePoint &t : {f.interval.lo(), f.interval.hi()})
      if (t.finite())
        points.insert(t.value());
  std::set<Rational> unique_shifts(shifts.begin(), shifts.end());
  for (std::size_t level = 0; level < depth; ++level) {
    std::set<Rational> next = points;
    for (const Rational &p : points)
      for (const Rational &s : unique_shifts)
        next.insert(Rational(p + s));
    points = std::move(next);
    if (points.size() > kMaxGridPoints)
      throw std::invalid_argument("oracle grid too large");
  }
  points_.assign(points.begin(), points.end());
}

std::size_t NaiveModel::region_of(const TimePoint &t) const {
  if (t.is_neg_inf())
    return 0;
  if (t.is_pos_inf())
    return 2 * points_.size();
  auto it = std::lower_bound(points_.begin(), points_.end(), t.value());
  std::size_t k = static_cast<std::size_t>(it - points_.begin());
  if (it != points_.end() && *it == t.value())
    return 2 * k + 1;
  return 2 * k;
}

TimePoint NaiveModel::region_lo(std::size_t r) const {
  if (r % 2 == 1)
    return points_[r / 2];
  std::size_t k = r / 2;
  return k == 0 ? TimePoint::neg_inf() : TimePoint(points_[k - 1]);
}

TimePoint NaiveModel::region_hi(std::size_t r) const {
  if (r % 2 == 1)
    return points_[r / 2];
  std::size_t k = r / 2;
  return k == points_.size() ? TimePoint::pos_inf() : TimePoint(points_[k]);
}

TimePoint NaiveModel::sample(std::size_t r, int variant) const {
  if (r % 2 == 1)
    return points_[r / 2];
  TimePoint lo = region_lo(r), hi = region_hi(r);
  if (lo.finite() && hi.finite()) {
    static const Rational kFractions[] = {Rational(1, 2), Rational(1, 4), Rational(3, 4)};
    return TimePoint(Rational(lo.value() + (hi.value() - lo.value()) * kFractions[variant]));
  }
  if (hi.finite())
    return TimePoint(Rational(hi.value() - 1 - variant));
  if (lo.finite())
    return TimePoint(Rational(lo.value() + 1 + variant));
  return TimePoint(Rational(variant));
}

template <class Pred>
bool NaiveModel::any_region_in(const TimePoint &lo, bool lo_closed, const TimePoint &hi,
                               bool hi_closed, Pred &&pred) const {
  End s_lo{lo, lo_closed}, s_hi{hi, hi_closed};
  std::size_t first = region_of(lo), last = region_of(hi);
  for (std::size_t r = first; r <= last; ++r) {
    End r_lo{region_lo(r), region_closed(r)}, r_hi{region_hi(r), region_closed(r)};
    if (nonempty(tighter_lo(s_lo, r_lo), tighter_hi(s_hi, r_hi)) && pred(r))
      return true;
  }
  return false;
}

bool NaiveModel::holds_region(const std::string &p, const std::vector<std::string> &tuple,
                              std::size_t region) const {
  auto &slots = memo_[{p, tuple}];
  if (slots.empty())
    slots.assign(region_count(), -1);
  if (slots[region] < 0) {
    bool v = holds_at(p, tuple, sample(region, 0));
    memo_[{p, tuple}][region] = v ? 1 : 0;
    return v;
  }
  return slots[region] == 1;
}

bool NaiveModel::holds_at(const std::string &p, const std::vector<std::string> &tuple,
                          const TimePoint &t) const {
  for (const Fact &f : data_) {
    if (f.atom.predicate != p || f.atom.args.size() != tuple.size())
      continue;
    bool same = true;
    for (std::size_t i = 0; i < tuple.size() && same; ++i)
      same = f.atom.args[i].name == tuple[i];
    if (same && member(f.interval, t))
      return true;
  }
  for (const Rule &r : program_.rules) {
    if (!r.head)
      continue;
    const Atom *h = innermost_atom(*r.head);
    if (h->predicate != p || h->args.size() != tuple.size())
      continue;
    Assignment base;
    bool ok = true;
    for (std::size_t i = 0; i < tuple.size() && ok; ++i) {
      const Term &arg = h->args[i];
      if (!arg.is_variable())
        ok = arg.name == tuple[i];
      else if (auto [it, inserted] = base.emplace(arg.name, tuple[i]); !inserted)
        ok = it->second == tuple[i];
    }
    if (!ok)
      continue;
    std::vector<const Modal *> ops = operator_chain(*r.head);
    bool derived = false;
    assignments(variables_of(r), base, [&](const Assignment &a) {
      derived = forced_at(r, ops, ops.size(), a, t);
      return derived;
    });
    if (derived)
      return true;
  }
  return false;
}

// Whether the part of the head below the first `level` operators is forced
// at t: some earlier stage is forced at a point whose operator image
// reaches t.
bool NaiveModel::forced_at(const Rule &r, const std::vector<const Modal *> &ops, std::size_t level,
                           const Assignment &a, const TimePoint &t) const {
  if (level == 0)
    return body_at(r, a, t);
  const Modal &m = *ops[level - 1];
  const Window &w = m.op.window;
  bool geq = w.lower == LowerCmp::Geq, leq = w.upper == UpperCmp::Leq;
  auto pred = [&](std::size_t region) { return forced_at(r, ops, level - 1, a, sample(region, 0)); };
  if (m.op.kind == ModalKind::BoxFuture) // t = s + x for x in W
    return any_region_in(t - w.d, leq, t - w.e, geq, pred);
  return any_region_in(t + w.e, geq, t + w.d, leq, pred); // t = s - x
}

bool NaiveModel::body_at(const Rule &r, const Assignment &a, const TimePoint &t) const {
  return std::all_of(r.body.begin(), r.body.end(),
                     [&](const Literal &l) { return literal_at(l, a, t); });
}

bool NaiveModel::literal_at(const Literal &l, const Assignment &a, const TimePoint &t) const {
  auto value = [&](const Term &term) -> const std::string & {
    return term.is_variable() ? a.at(term.name) : term.name;
  };
  if (const Comparison *c = l.as_comparison()) {
    bool equal = value(c->lhs) == value(c->rhs);
    return c->op == ComparisonOp::Eq ? equal : !equal;
  }
  if (const Atom *at = l.as_atom()) {
    std::vector<std::string> tuple;
    for (const Term &term : at->args)
      tuple.push_back(value(term));
    return holds_region(at->predicate, tuple, region_of(t));
  }
  const Modal &m = *l.as_modal();
  const Window &w = m.op.window;
  bool geq = w.lower == LowerCmp::Geq, leq = w.upper == UpperCmp::Leq;
  bool future = m.op.kind == ModalKind::BoxFuture || m.op.kind == ModalKind::DiamondFuture;
  TimePoint lo = future ? t + w.e : t - w.d;
  TimePoint hi = future ? t + w.d : t - w.e;
  bool lo_closed = future ? geq : leq;
  bool hi_closed = future ? leq : geq;
  if (is_box(m.op.kind))
    return !any_region_in(lo, lo_closed, hi, hi_closed, [&](std::size_t region) {
      return !literal_at(*m.inner, a, sample(region, 0));
    });
  return any_region_in(lo, lo_closed, hi, hi_closed, [&](std::size_t region) {
    return literal_at(*m.inner, a, sample(region, 0));
  });
}

void NaiveModel::assignments(const std::vector<std::string> &vars, Assignment base,
                             const std::function<bool(const Assignment &)> &visit) const {
  std::vector<std::string> free;
  for (const std::string &v : vars)
    if (!base.count(v))
      free.push_back(v);
  if (!free.empty() && domain_.empty())
    return;
  std::vector<std::size_t> choice(free.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free.size(); ++i)
      base[free[i]] = domain_[choice[i]];
    if (visit(base))
      return;
    std::size_t i = 0;
    for (; i < free.size(); ++i) {
      if (++choice[i] < domain_.size())
        break;
      choice[i] = 0;
    }
    if (i == free.size())
      return;
  }
}

std::vector<std::vector<std::string>> NaiveModel::tuples_matching(const Atom &atom) const {
  std::vector<std::string> vars;
  collect_variables(atom, vars);
  std::set<std::vector<std::string>> out;
  assignments(vars, {}, [&](const Assignment &a) {
    std::vector<std::string> t;
    for (const Term &term : atom.args)
      t.push_back(term.is_variable() ? a.at(term.name) : term.name);
    out.insert(std::move(t));
    return false;
  });
  return {out.begin(), out.end()};
}

bool NaiveModel::point_certain(const Atom &ground, const TimePoint &t) const {
  std::vector<std::string> tuple;
  for (const Term &term : ground.args)
    tuple.push_back(term.name);
  return holds_at(ground.predicate, tuple, t);
}

bool NaiveModel::inconsistent() const {
  for (const Rule &r : program_.rules) {
    if (!r.falsum())
      continue;
    bool fires = false;
    assignments(variables_of(r), {}, [&](const Assignment &a) {
      for (std::size_t region = 0; region < region_count() && !fires; ++region)
        fires = body_at(r, a, sample(region, 0));
      return fires;
    });
    if (fires)
      return true;
  }
  return false;
}

AnswerSet NaiveModel::naive_answer(const Query &query) const {
  AnswerSet out;
  out.predicate = query.atom.predicate;
  if (inconsistent()) {
    out.status = Status::Inconsistent;
    std::set<std::string> ind;
    for (const Fact &f : data_)
      for (const Term &t : f.atom.args)
        ind.insert(t.name);
    std::vector<std::string> vars;
    collect_variables(query.atom, vars);
    std::set<std::vector<std::string>> tuples;
    std::vector<std::size_t> choice(vars.size(), 0);
    std::vector<std::string> consts(ind.begin(), ind.end());
    if (!vars.empty() && consts.empty())
      return out;
    while (true) {
      std::map<std::string, std::string> a;
      for (std::size_t i = 0; i < vars.size(); ++i)
        a[vars[i]] = consts[choice[i]];
      std::vector<std::string> t;
      for (const Term &term : query.atom.args)
        t.push_back(term.is_variable() ? a[term.name] : term.name);
      tuples.insert(std::move(t));
      std::size_t i = 0;
      for (; i < choice.size(); ++i) {
        if (++choice[i] < consts.size())
          break;
        choice[i] = 0;
      }
      if (i == choice.size())
        break;
    }
    for (const auto &t : tuples)
      out.answers.push_back({t, Interval::open(TimePoint::neg_inf(), TimePoint::pos_inf())});
    return out;
  }

  out.status = Status::Consistent;
  for (const std::vector<std::string> &tuple : tuples_matching(query.atom)) {
    std::size_t r = 0;
    const std::size_t n = region_count();
    while (r < n) {
      if (!holds_region(query.atom.predicate, tuple, r)) {
        ++r;
        continue;
      }
      std::size_t start = r;
      while (r + 1 < n && holds_region(query.atom.predicate, tuple, r + 1))
        ++r;
      out.answers.push_back(
          {tuple, Interval(region_lo(start), region_closed(start) ? Bound::Closed : Bound::Open,
                           region_hi(r), region_closed(r) ? Bound::Closed : Bound::Open)});
      ++r;
    }
  }
  return out;
}

void NaiveModel::check_region_constancy() const {
  Signature sig = signature_of(program_, data_);
  for (const auto &[p, arity] : sig) {
    Atom pattern{p, {}};
    for (std::size_t i = 0; i < arity; ++i)
      pattern.args.push_back(Term::variable("v" + std::to_string(i)));
    for (const std::vector<std::string> &tuple : tuples_matching(pattern)) {
      for (std::size_t r = 0; r < region_count(); r += 2) {
        bool expected = holds_region(p, tuple, r);
        for (int variant : {1, 2})
          if (holds_at(p, tuple, sample(r, variant)) != expected)
            throw std::logic_error("verdict for " + p + " varies inside region (" +
                                   format_timepoint(region_lo(r)) + "," +
                                   format_timepoint(region_hi(r)) + ")");
      }
    }
  }
}

bool point_certain(const Ontology &program, const std::vector<Fact> &data, const Atom &ground,
                   const TimePoint &t) {
  return NaiveModel(program, data).point_certain(ground, t);
}

AnswerSet naive_answer(const Ontology &program, const std::vector<Fact> &data,
                       const Query &query) {
  return NaiveModel(program, data).naive_answer(query);
}

} // namespace chronolog::oracle
