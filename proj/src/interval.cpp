#include "chronolog/interval.hpp"

#include <algorithm>

namespace chronolog {

namespace {

Bound infinite_open(const TimePoint &t, Bound b) { return t.finite() ? b : Bound::Open; }

// Orders lower ends: smaller point first, closed before open at a tie.
bool lower_less(const Interval &a, const Interval &b) {
  if (a.lo() != b.lo())
    return a.lo() < b.lo();
  return a.lo_bound() == Bound::Closed && b.lo_bound() == Bound::Open;
}

// True if upper end of a reaches beyond upper end of b.
bool upper_greater(const Interval &a, const Interval &b) {
  if (a.hi() != b.hi())
    return a.hi() > b.hi();
  return a.hi_bound() == Bound::Closed && b.hi_bound() == Bound::Open;
}

// Whether b (with b.lo >= a.lo) overlaps or touches a so that a ∪ b is one
// interval.
bool joins(const Interval &a, const Interval &b) {
  if (b.lo() < a.hi())
    return true;
  if (b.lo() == a.hi())
    return a.hi_bound() == Bound::Closed || b.lo_bound() == Bound::Closed;
  return false;
}

Bound closed_if(bool c) { return c ? Bound::Closed : Bound::Open; }

} // namespace

Interval::Interval(TimePoint lo, Bound lo_bound, TimePoint hi, Bound hi_bound)
    : lo_(std::move(lo)), lo_bound_(infinite_open(lo_, lo_bound)), hi_(std::move(hi)),
      hi_bound_(infinite_open(hi_, hi_bound)) {}

bool Interval::empty() const {
  if (lo_ < hi_)
    return false;
  return !(lo_ == hi_ && lo_.finite() && lo_bound_ == Bound::Closed &&
           hi_bound_ == Bound::Closed);
}

bool Interval::contains(const TimePoint &t) const {
  if (!t.finite())
    return false;
  bool above = lo_bound_ == Bound::Closed ? lo_ <= t : lo_ < t;
  bool below = hi_bound_ == Bound::Closed ? t <= hi_ : t < hi_;
  return above && below;
}

bool Window::consistent() const {
  if (e < 0 || d < 0)
    return false;
  if (e < d)
    return true;
  return e == d && lower == LowerCmp::Geq && upper == UpperCmp::Leq;
}

bool Window::contains(const Rational &x) const {
  bool above = lower == LowerCmp::Geq ? x >= e : x > e;
  bool below = upper == UpperCmp::Leq ? x <= d : x < d;
  return above && below;
}

bool is_empty(const Interval &i) { return i.empty(); }

Interval intersect(const Interval &a, const Interval &b) {
  const Interval &lower_src = lower_less(a, b) ? b : a;
  const Interval &upper_src = upper_greater(a, b) ? b : a;
  return {lower_src.lo(), lower_src.lo_bound(), upper_src.hi(), upper_src.hi_bound()};
}

IntervalSet coalesce(std::vector<Interval> items) {
  std::erase_if(items, [](const Interval &i) { return i.empty(); });
  std::sort(items.begin(), items.end(), lower_less);
  IntervalSet out;
  for (Interval &next : items) {
    if (!out.items_.empty() && joins(out.items_.back(), next)) {
      Interval &cur = out.items_.back();
      if (upper_greater(next, cur))
        cur = Interval(cur.lo(), cur.lo_bound(), next.hi(), next.hi_bound());
    } else {
      out.items_.push_back(std::move(next));
    }
  }
  return out;
}

bool IntervalSet::contains(const TimePoint &t) const {
  // First interval whose upper end is not below t.
  auto it = std::partition_point(items_.begin(), items_.end(), [&](const Interval &i) {
    return i.hi() < t || (i.hi() == t && i.hi_bound() == Bound::Open);
  });
  return it != items_.end() && it->contains(t);
}

bool contains_point(const IntervalSet &s, const TimePoint &t) { return s.contains(t); }

IntervalSet IntervalSet::unite(const IntervalSet &other) const {
  std::vector<Interval> all = items_;
  all.insert(all.end(), other.items_.begin(), other.items_.end());
  return coalesce(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet &other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < items_.size() && j < other.items_.size()) {
    Interval piece = chronolog::intersect(items_[i], other.items_[j]);
    if (!piece.empty())
      out.push_back(std::move(piece));
    if (upper_greater(items_[i], other.items_[j]))
      ++j;
    else if (upper_greater(other.items_[j], items_[i]))
      ++i;
    else {
      ++i;
      ++j;
    }
  }
  // Pieces are already sorted, disjoint and non-adjacent.
  IntervalSet s;
  s.items_ = std::move(out);
  return s;
}

Bound edge_ed(Bound b, LowerCmp c) { return closed_if(b == Bound::Closed && c == LowerCmp::Geq); }

Bound edge_ed(Bound b, UpperCmp c) { return closed_if(b == Bound::Closed && c == UpperCmp::Leq); }

Bound edge_de(Bound b, LowerCmp c) {
  return closed_if((b == Bound::Open && c == LowerCmp::Gt) ||
                   (b == Bound::Closed && c == LowerCmp::Geq));
}

Bound edge_de(Bound b, UpperCmp c) {
  return closed_if((b == Bound::Open && c == UpperCmp::Lt) ||
                   (b == Bound::Closed && c == UpperCmp::Leq));
}

Bound fit_edge(Bound b, LowerCmp c) { return closed_if(!(b == Bound::Open && c == LowerCmp::Geq)); }

Bound fit_edge(Bound b, UpperCmp c) { return closed_if(!(b == Bound::Open && c == UpperCmp::Leq)); }

// In the Past direction the window is reflected, so the window's upper
// comparison governs the result's lower end and vice versa.
namespace {
LowerCmp as_lower(UpperCmp c) { return c == UpperCmp::Leq ? LowerCmp::Geq : LowerCmp::Gt; }
UpperCmp as_upper(LowerCmp c) { return c == LowerCmp::Geq ? UpperCmp::Leq : UpperCmp::Lt; }
} // namespace

Interval shift_box_head(const Interval &i, const Window &w, Direction dir) {
  if (dir == Direction::Future)
    return {i.lo() + w.e, edge_ed(i.lo_bound(), w.lower), i.hi() + w.d,
            edge_ed(i.hi_bound(), w.upper)};
  return {i.lo() - w.d, edge_ed(i.lo_bound(), as_lower(w.upper)), i.hi() - w.e,
          edge_ed(i.hi_bound(), as_upper(w.lower))};
}

Interval shrink_box_body(const Interval &i, const Window &w, Direction dir) {
  if (dir == Direction::Future)
    return {i.lo() - w.e, fit_edge(i.lo_bound(), w.lower), i.hi() - w.d,
            fit_edge(i.hi_bound(), w.upper)};
  return {i.lo() + w.d, fit_edge(i.lo_bound(), as_lower(w.upper)), i.hi() + w.e,
          fit_edge(i.hi_bound(), as_upper(w.lower))};
}

Interval mirror(const Interval &i) { return {-i.hi(), i.hi_bound(), -i.lo(), i.lo_bound()}; }

std::string to_string(const Interval &i, TimeStyle style) {
  std::string s = i.lo_bound() == Bound::Closed ? "[" : "(";
  s += format_timepoint(i.lo(), style);
  s += ",";
  s += format_timepoint(i.hi(), style);
  s += i.hi_bound() == Bound::Closed ? "]" : ")";
  return s;
}

std::string to_string(const IntervalSet &s, TimeStyle style) {
  std::string out = "{";
  bool first = true;
  for (const Interval &i : s) {
    if (!first)
      out += ", ";
    first = false;
    out += to_string(i, style);
  }
  return out + "}";
}

} // namespace chronolog
