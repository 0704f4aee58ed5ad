#pragma once

#include <span>
#include <string>
#include <vector>

#include "chronolog/time.hpp"

namespace chronolog {

enum class Bound : unsigned char { Open, Closed };

/// Lower comparison of a window: t > e or t >= e.
enum class LowerCmp : unsigned char { Gt, Geq };
/// Upper comparison of a window: t < d or t <= d.
enum class UpperCmp : unsigned char { Lt, Leq };

enum class Direction : unsigned char { Future, Past };

/// Interval with open or closed ends. Infinite ends are always stored open.
/// May be empty; use empty() before treating it as a set of time points.
class Interval {
public:
  Interval(TimePoint lo, Bound lo_bound, TimePoint hi, Bound hi_bound);

  static Interval closed(TimePoint lo, TimePoint hi) {
    return {std::move(lo), Bound::Closed, std::move(hi), Bound::Closed};
  }
  static Interval open(TimePoint lo, TimePoint hi) {
    return {std::move(lo), Bound::Open, std::move(hi), Bound::Open};
  }
  static Interval everything() { return open(TimePoint::neg_inf(), TimePoint::pos_inf()); }

  const TimePoint &lo() const { return lo_; }
  const TimePoint &hi() const { return hi_; }
  Bound lo_bound() const { return lo_bound_; }
  Bound hi_bound() const { return hi_bound_; }

  bool empty() const;
  bool contains(const TimePoint &t) const;

  friend bool operator==(const Interval &, const Interval &) = default;

private:
  TimePoint lo_;
  Bound lo_bound_;
  TimePoint hi_;
  Bound hi_bound_;
};

/// Window {t : t (>|>=) e and t (<|<=) d} of a metric operator.
struct Window {
  Rational e;
  LowerCmp lower = LowerCmp::Geq;
  Rational d;
  UpperCmp upper = UpperCmp::Leq;

  /// e >= 0, d finite, and the window contains at least one point.
  bool consistent() const;
  bool contains(const Rational &distance) const;

  friend bool operator==(const Window &a, const Window &b) {
    return a.e == b.e && a.lower == b.lower && a.d == b.d && a.upper == b.upper;
  }
};

/// Finite union of intervals in canonical form: nonempty, sorted, pairwise
/// disjoint and no two of them can be merged into one interval.
class IntervalSet {
public:
  IntervalSet() = default;

  std::span<const Interval> intervals() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(const TimePoint &t) const;

  IntervalSet unite(const IntervalSet &other) const;
  IntervalSet intersect(const IntervalSet &other) const;

  friend bool operator==(const IntervalSet &, const IntervalSet &) = default;

private:
  friend IntervalSet coalesce(std::vector<Interval> items);
  std::vector<Interval> items_;
};

bool is_empty(const Interval &i);
Interval intersect(const Interval &a, const Interval &b);
IntervalSet coalesce(std::vector<Interval> items);
inline IntervalSet coalesce(std::span<const Interval> items) {
  return coalesce(std::vector<Interval>(items.begin(), items.end()));
}
bool contains_point(const IntervalSet &s, const TimePoint &t);

// Edge functions deciding the bound of a derived interval end.
//
// edge_ed: closed iff the source edge is closed and the comparison inclusive.
// edge_de: closed iff (open edge, strict comparison) or (closed edge,
//          inclusive comparison).
Bound edge_ed(Bound b, LowerCmp c);
Bound edge_ed(Bound b, UpperCmp c);
Bound edge_de(Bound b, LowerCmp c);
Bound edge_de(Bound b, UpperCmp c);

/// Exact edge for shrinking: closed unless the edge is open and the
/// comparison inclusive. Differs from edge_de only for a closed edge with a
/// strict comparison, where the boundary point still has its whole window
/// inside the interval.
Bound fit_edge(Bound b, LowerCmp c);
Bound fit_edge(Bound b, UpperCmp c);

/// Points covered by the window image of some point of i: the head of a box
/// rule fires on all of t + W (Future) or t - W (Past) for every t in i.
Interval shift_box_head(const Interval &i, const Window &w, Direction dir);

/// Points whose whole window image lies inside i. Only meaningful for
/// maximal intervals of a canonical set; the result may be empty.
Interval shrink_box_body(const Interval &i, const Window &w, Direction dir);

/// Time reflection t -> -t.
Interval mirror(const Interval &i);

std::string to_string(const Interval &i, TimeStyle style = TimeStyle::Seconds);
std::string to_string(const IntervalSet &s, TimeStyle style = TimeStyle::Seconds);

} // namespace chronolog
