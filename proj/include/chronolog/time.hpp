#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chronolog {

/// Exact rational number; all time arithmetic is done in seconds.
using Rational = mpq_class;

/// A point on the dense time line extended with -inf and +inf.
class TimePoint {
public:
  enum class Kind : unsigned char { NegInf, Finite, PosInf };

  TimePoint() = default;
  TimePoint(Rational value) : value_(std::move(value)) { value_.canonicalize(); }
  TimePoint(long seconds) : value_(seconds) {}

  static TimePoint neg_inf() { return TimePoint(Kind::NegInf); }
  static TimePoint pos_inf() { return TimePoint(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  /// Only meaningful for finite points; infinite points report 0.
  const Rational &value() const { return value_; }

  // Shifting by a finite distance saturates at the infinities.
  TimePoint operator+(const Rational &d) const;
  TimePoint operator-(const Rational &d) const;
  /// Reflection t -> -t, swapping the infinities.
  TimePoint operator-() const;

  friend bool operator==(const TimePoint &a, const TimePoint &b);
  friend std::strong_ordering operator<=>(const TimePoint &a, const TimePoint &b);

private:
  explicit TimePoint(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

/// Midpoint of two finite points.
Rational midpoint(const Rational &a, const Rational &b);

// Text forms.
//
// Time points: decimal seconds ("12.5", "-3"), fractions ("1/3"), a value
// with a duration suffix ("90min"), ISO-8601 UTC instants
// ("2015-11-11T08:55:00", optional fraction, "Z" or fixed "+hh:mm" offset),
// and "-inf" / "+inf" / "inf".
//
// Durations: non-negative finite rationals with optional unit suffix
// ms, s, min, h, d.

enum class TimeStyle { Seconds, Iso };

/// Throws ParseError (line 1, column of the offending character).
TimePoint parse_timepoint(std::string_view text);
Rational parse_duration(std::string_view text);

/// Exact decimal if the denominator allows, else "p/q".
std::string format_rational(const Rational &r);
std::string format_timepoint(const TimePoint &t, TimeStyle style = TimeStyle::Seconds);

/// Days since 1970-01-01 for a proleptic Gregorian date.
long long days_from_civil(long long y, unsigned m, unsigned d);

} // namespace chronolog
