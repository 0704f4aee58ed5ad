#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chronolog/ast.hpp"
#include "chronolog/evaluator.hpp"

// Reference implementation for differential testing. Everything here is
// computed straight from the dense-time semantics by brute force and shares
// no evaluation code with the engine. Small inputs only.
namespace chronolog::oracle {

inline constexpr std::size_t kMaxFacts = 64;
inline constexpr std::size_t kMaxRules = 32;
inline constexpr std::size_t kMaxGridPoints = 20000;

/// Least set containing the input and closed under concatenating an element
/// with an input interval that overlaps or touches it and ends no earlier.
std::vector<Interval> naive_closure(const std::vector<Interval> &table);

/// Elements not strictly contained in another element.
std::vector<Interval> maximal_elements(const std::vector<Interval> &items);

/// Grounded minimal model of a non-recursive program with box and diamond
/// operators (no diamonds in heads), materialized per elementary region of a
/// grid of critical time points.
class NaiveModel {
public:
  /// Throws std::invalid_argument above the size guard and RecursionError on
  /// recursive programs.
  NaiveModel(Ontology program, std::vector<Fact> data);

  bool point_certain(const Atom &ground, const TimePoint &t) const;
  bool inconsistent() const;
  AnswerSet naive_answer(const Query &query) const;

  /// Finite critical points; regions are these points and the open gaps
  /// around them.
  const std::vector<Rational> &grid() const { return points_; }

  /// Re-evaluates every predicate at two further points of each open region
  /// and throws std::logic_error if any verdict differs.
  void check_region_constancy() const;

private:
  using Assignment = std::map<std::string, std::string>;

  std::size_t region_count() const { return 2 * points_.size() + 1; }
  std::size_t region_of(const TimePoint &t) const;
  TimePoint sample(std::size_t region, int variant) const;
  TimePoint region_lo(std::size_t region) const;
  TimePoint region_hi(std::size_t region) const;
  bool region_closed(std::size_t region) const { return region % 2 == 1; }

  bool holds_region(const std::string &p, const std::vector<std::string> &tuple,
                    std::size_t region) const;
  bool holds_at(const std::string &p, const std::vector<std::string> &tuple,
                const TimePoint &t) const;
  bool literal_at(const Literal &l, const Assignment &a, const TimePoint &t) const;
  bool body_at(const Rule &r, const Assignment &a, const TimePoint &t) const;
  bool forced_at(const Rule &r, const std::vector<const Modal *> &head_ops, std::size_t level,
                 const Assignment &a, const TimePoint &t) const;
  template <class Pred>
  bool any_region_in(const TimePoint &lo, bool lo_closed, const TimePoint &hi, bool hi_closed,
                     Pred &&pred) const;
  void assignments(const std::vector<std::string> &vars, Assignment base,
                   const std::function<bool(const Assignment &)> &visit) const;
  std::vector<std::vector<std::string>> tuples_matching(const Atom &a) const;

  Ontology program_;
  std::vector<Fact> data_;
  std::vector<std::string> domain_;
  std::vector<Rational> points_;
  mutable std::map<std::pair<std::string, std::vector<std::string>>, std::vector<signed char>>
      memo_;
};

bool point_certain(const Ontology &program, const std::vector<Fact> &data, const Atom &ground,
                   const TimePoint &t);
AnswerSet naive_answer(const Ontology &program, const std::vector<Fact> &data,
                       const Query &query);

} // namespace chronolog::oracle
