#pragma once

#include <set>
#include <string>
#include <vector>

#include "chronolog/interval.hpp"
#include "chronolog/parser.hpp"

// Membership reasoning straight from endpoint comparisons. Uses Interval only
// as a record of four fields.
namespace chronolog::testing {

inline bool in(const Interval &i, const Rational &t) {
  TimePoint p(t);
  bool lo = i.lo_bound() == Bound::Closed ? i.lo() <= p : i.lo() < p;
  bool hi = i.hi_bound() == Bound::Closed ? p <= i.hi() : p < i.hi();
  return lo && hi;
}

inline bool in_any(const std::vector<Interval> &v, const Rational &t) {
  for (const Interval &i : v)
    if (in(i, t))
      return true;
  return false;
}

inline bool in_window(const Window &w, const Rational &x) {
  bool lo = w.lower == LowerCmp::Geq ? x >= w.e : x > w.e;
  bool hi = w.upper == UpperCmp::Leq ? x <= w.d : x < w.d;
  return lo && hi;
}

/// Some s in i with s + x = t for x in w (Future) or s - x = t (Past).
/// The candidates form one interval; decided from its two ends.
inline bool reached(const Interval &i, const Window &w, Direction dir, const Rational &t) {
  // Future: s in [t - d, t - e]; Past: s in [t + e, t + d].
  TimePoint lo = dir == Direction::Future ? TimePoint(Rational(t - w.d)) : TimePoint(Rational(t + w.e));
  TimePoint hi = dir == Direction::Future ? TimePoint(Rational(t - w.e)) : TimePoint(Rational(t + w.d));
  bool lo_closed = dir == Direction::Future ? w.upper == UpperCmp::Leq : w.lower == LowerCmp::Geq;
  bool hi_closed = dir == Direction::Future ? w.lower == LowerCmp::Geq : w.upper == UpperCmp::Leq;
  // Tighter of the two lower ends and of the two upper ends.
  TimePoint L = lo;
  bool Lc = lo_closed;
  if (i.lo() > L || (i.lo() == L && i.lo_bound() == Bound::Open)) {
    Lc = i.lo() == L ? false : i.lo_bound() == Bound::Closed;
    L = i.lo();
  }
  TimePoint H = hi;
  bool Hc = hi_closed;
  if (i.hi() < H || (i.hi() == H && i.hi_bound() == Bound::Open)) {
    Hc = i.hi() == H ? false : i.hi_bound() == Bound::Closed;
    H = i.hi();
  }
  return L < H || (L == H && L.finite() && Lc && Hc);
}

/// Every point of t + w (Future) or t - w (Past) lies in i.
inline bool window_inside(const Interval &i, const Window &w, Direction dir, const Rational &t) {
  TimePoint a = dir == Direction::Future ? TimePoint(Rational(t + w.e)) : TimePoint(Rational(t - w.d));
  TimePoint b = dir == Direction::Future ? TimePoint(Rational(t + w.d)) : TimePoint(Rational(t - w.e));
  bool a_closed = dir == Direction::Future ? w.lower == LowerCmp::Geq : w.upper == UpperCmp::Leq;
  bool b_closed = dir == Direction::Future ? w.upper == UpperCmp::Leq : w.lower == LowerCmp::Geq;
  bool lo_ok = i.lo() < a || (i.lo() == a && (i.lo_bound() == Bound::Closed || !a_closed));
  bool hi_ok = b < i.hi() || (b == i.hi() && (i.hi_bound() == Bound::Closed || !b_closed));
  return lo_ok && hi_ok;
}

/// Endpoints of the inputs, their shifts by the given distances, midpoints
/// between neighbours and a point beyond each end.
inline std::vector<Rational> sample_points(const std::vector<Interval> &items,
                                           const std::vector<Rational> &shifts = {}) {
  std::set<Rational> base;
  for (const Interval &i : items)
    for (const TimePoint &p : {i.lo(), i.hi()})
      if (p.finite())
        base.insert(p.value());
  std::set<Rational> shifted = base;
  for (const Rational &b : base)
    for (const Rational &s : shifts) {
      shifted.insert(Rational(b + s));
      shifted.insert(Rational(b - s));
    }
  if (shifted.empty())
    shifted.insert(Rational(0));
  std::vector<Rational> pts(shifted.begin(), shifted.end());
  std::vector<Rational> out = pts;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    out.push_back((pts[k] + pts[k + 1]) / 2);
  out.push_back(pts.front() - 1);
  out.push_back(pts.back() + 1);
  return out;
}

/// Interval from text such as "(0, 5]".
inline Interval iv(const std::string &text) {
  return parse_data("T @ " + text + ".").front().interval;
}

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

} // namespace chronolog::testing
