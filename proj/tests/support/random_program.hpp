#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chronolog/ast.hpp"

namespace chronolog::testing {

struct RandomShape {
  std::size_t max_predicates = 5;
  std::size_t max_arity = 2;
  std::size_t max_rules = 8;
  std::size_t max_facts = 12;
  std::size_t max_layers = 3;
  /// Operators nested inside operators, and box chains in heads.
  bool nesting = false;
  bool diamonds = true;
  /// Percent chance that a rule is a falsum rule.
  int falsum_percent = 6;
};

struct RandomInstance {
  Ontology program;
  std::vector<Fact> data;
  std::vector<Query> queries;
};

class ProgramGenerator {
public:
  explicit ProgramGenerator(std::uint64_t seed, RandomShape shape = {})
      : rng_(seed), shape_(shape) {}

  RandomInstance next() {
    RandomInstance out;
    std::size_t npred = pick(2, shape_.max_predicates);
    std::size_t layers = pick(1, shape_.max_layers);
    preds_.clear();
    for (std::size_t i = 0; i < npred; ++i) {
      Pred p;
      p.name = std::string(1, static_cast<char>('A' + i));
      p.arity = pick(0, shape_.max_arity);
      p.layer = i == 0 ? 0 : pick(0, layers);
      preds_.push_back(p);
    }
    std::size_t nrules = pick(0, shape_.max_rules);
    for (std::size_t i = 0; i < nrules; ++i)
      if (auto r = rule())
        out.program.rules.push_back(std::move(*r));

    std::size_t nfacts = pick(0, shape_.max_facts);
    for (std::size_t i = 0; i < nfacts; ++i) {
      const Pred &p = preds_[pick(0, preds_.size() - 1)];
      Atom a{p.name, {}};
      for (std::size_t k = 0; k < p.arity; ++k)
        a.args.push_back(Term::constant(constant()));
      out.data.push_back({a, interval()});
    }

    for (const Pred &p : preds_) {
      Query q;
      q.atom.predicate = p.name;
      for (std::size_t k = 0; k < p.arity; ++k)
        q.atom.args.push_back(chance(15) ? Term::constant(constant())
                                         : Term::variable(std::string(1, "xyz"[k % 3])));
      out.queries.push_back(q);
    }
    return out;
  }

  std::mt19937_64 &rng() { return rng_; }

private:
  struct Pred {
    std::string name;
    std::size_t arity = 0;
    std::size_t layer = 0;
  };

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(int percent) { return static_cast<int>(pick(0, 99)) < percent; }

  std::string constant() { return std::string(1, "abc"[pick(0, 2)]); }

  Rational half_integer(std::size_t lo_halves, std::size_t hi_halves) {
    Rational r(static_cast<long>(pick(lo_halves, hi_halves)), 2);
    r.canonicalize();
    return r;
  }

  Window window() {
    Window w;
    w.e = half_integer(0, 4);
    Rational width = half_integer(0, 4);
    w.d = w.e + width;
    w.lower = chance(50) ? LowerCmp::Geq : LowerCmp::Gt;
    w.upper = chance(50) ? UpperCmp::Leq : UpperCmp::Lt;
    if (width == 0) {
      w.lower = LowerCmp::Geq;
      w.upper = UpperCmp::Leq;
    }
    return w;
  }

  TimePoint endpoint() { return TimePoint(static_cast<long>(pick(0, 10))); }

  Interval interval() {
    while (true) {
      TimePoint lo = chance(8) ? TimePoint::neg_inf() : endpoint();
      TimePoint hi = chance(8) ? TimePoint::pos_inf() : endpoint();
      Bound lb = chance(50) ? Bound::Closed : Bound::Open;
      Bound hb = chance(50) ? Bound::Closed : Bound::Open;
      Interval i(lo, lb, hi, hb);
      if (!is_empty(i))
        return i;
    }
  }

  Term term(std::set<std::string> *vars) {
    if (chance(20))
      return Term::constant(constant());
    std::string v(1, "xyz"[pick(0, 2)]);
    if (vars)
      vars->insert(v);
    return Term::variable(v);
  }

  Literal body_literal(const Pred &p, std::set<std::string> &vars, int depth) {
    Atom a{p.name, {}};
    for (std::size_t k = 0; k < p.arity; ++k)
      a.args.push_back(term(&vars));
    Literal l = Literal::atom(a);
    int ops = chance(45) ? 1 : 0;
    if (shape_.nesting && ops && chance(40))
      ops = 2;
    for (int i = 0; i < ops && depth + i < 3; ++i) {
      ModalKind k = static_cast<ModalKind>(pick(0, shape_.diamonds ? 3 : 1));
      l = Literal::modal({k, window()}, l);
    }
    return l;
  }

  std::optional<Rule> rule() {
    std::vector<const Pred *> heads, ext;
    for (const Pred &p : preds_)
      (p.layer > 0 ? heads : ext).push_back(&p);
    bool falsum = chance(shape_.falsum_percent);
    if (heads.empty() && !falsum)
      return std::nullopt;
    const Pred *head = falsum ? nullptr : heads[pick(0, heads.size() - 1)];
    std::size_t limit = falsum ? 99 : head->layer;
    std::vector<const Pred *> below;
    for (const Pred &p : preds_)
      if (p.layer < limit)
        below.push_back(&p);
    if (below.empty())
      return std::nullopt;

    Rule r;
    std::set<std::string> vars;
    std::size_t nbody = pick(1, 3);
    for (std::size_t i = 0; i < nbody; ++i)
      r.body.push_back(body_literal(*below[pick(0, below.size() - 1)], vars, 0));
    if (vars.size() >= 2 && chance(20)) {
      auto it = vars.begin();
      std::string a = *it++, b = *it;
      r.body.push_back(Literal::comparison(
          {Term::variable(a), chance(70) ? ComparisonOp::Neq : ComparisonOp::Eq,
           Term::variable(b)}));
    }
    if (falsum)
      return r;

    std::vector<std::string> pool(vars.begin(), vars.end());
    Atom h{head->name, {}};
    for (std::size_t k = 0; k < head->arity; ++k)
      h.args.push_back(pool.empty() || chance(15) ? Term::constant(constant())
                                                  : Term::variable(pool[pick(0, pool.size() - 1)]));
    Literal hl = Literal::atom(h);
    int ops = chance(35) ? 1 : 0;
    if (shape_.nesting && ops && chance(30))
      ops = 2;
    for (int i = 0; i < ops; ++i)
      hl = Literal::modal({chance(50) ? ModalKind::BoxFuture : ModalKind::BoxPast, window()}, hl);
    r.head = hl;
    return r;
  }

  std::mt19937_64 rng_;
  RandomShape shape_;
  std::vector<Pred> preds_;
};

} // namespace chronolog::testing
