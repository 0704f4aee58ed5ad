#include "chronolog/time.hpp"

#include <cctype>
#include <cstdint>

#include "chronolog/errors.hpp"

namespace chronolog {

TimePoint TimePoint::operator+(const Rational &d) const {
  if (!finite())
    return *this;
  return TimePoint(Rational(value_ + d));
}

TimePoint TimePoint::operator-(const Rational &d) const {
  if (!finite())
    return *this;
  return TimePoint(Rational(value_ - d));
}

TimePoint TimePoint::operator-() const {
  switch (kind_) {
  case Kind::NegInf:
    return pos_inf();
  case Kind::PosInf:
    return neg_inf();
  case Kind::Finite:
    break;
  }
  return TimePoint(Rational(-value_));
}

bool operator==(const TimePoint &a, const TimePoint &b) {
  if (a.kind_ != b.kind_)
    return false;
  return !a.finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const TimePoint &a, const TimePoint &b) {
  if (a.kind_ != b.kind_)
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (!a.finite())
    return std::strong_ordering::equal;
  return cmp(a.value_, b.value_) <=> 0;
}

Rational midpoint(const Rational &a, const Rational &b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

namespace {

[[noreturn]] void fail(std::size_t offset, const std::string &msg) {
  throw ParseError({1, static_cast<int>(offset) + 1}, msg);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads a run of digits starting at i; returns the digits.
std::string digits(std::string_view s, std::size_t &i) {
  std::size_t start = i;
  while (i < s.size() && is_digit(s[i]))
    ++i;
  return std::string(s.substr(start, i - start));
}

Rational pow10(unsigned n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, n);
  return Rational(p);
}

// Parses "123", "12.75", "3/4", "1.5/2" (no sign, no unit) starting at i.
Rational unsigned_rational(std::string_view s, std::size_t &i) {
  std::size_t start = i;
  std::string int_part = digits(s, i);
  std::string frac_part;
  if (i < s.size() && s[i] == '.') {
    ++i;
    frac_part = digits(s, i);
    if (frac_part.empty())
      fail(i, "expected digits after '.'");
  }
  if (int_part.empty() && frac_part.empty())
    fail(start, "expected a number");
  if (int_part.size() + frac_part.size() > 4096)
    fail(start, "numeric literal too long");
  mpz_class mantissa(int_part.empty() ? std::string("0") : int_part + frac_part, 10);
  if (int_part.empty())
    mantissa = mpz_class(frac_part, 10);
  Rational value(mantissa);
  value /= pow10(static_cast<unsigned>(frac_part.size()));
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::size_t den_at = i;
    std::string den = digits(s, i);
    if (den.empty())
      fail(den_at, "expected a denominator after '/'");
    if (den.size() > 4096)
      fail(den_at, "numeric literal too long");
    mpz_class dz(den, 10);
    if (dz == 0)
      fail(den_at, "zero denominator");
    value /= Rational(dz);
  }
  value.canonicalize();
  return value;
}

// Unit suffix multiplier in seconds; empty suffix means seconds.
bool unit_factor(std::string_view unit, Rational &factor) {
  if (unit.empty() || unit == "s")
    factor = 1;
  else if (unit == "ms")
    factor = Rational(1, 1000);
  else if (unit == "min")
    factor = 60;
  else if (unit == "h")
    factor = 3600;
  else if (unit == "d")
    factor = 86400;
  else
    return false;
  return true;
}

std::string_view trim(std::string_view s, std::size_t &lead) {
  lead = 0;
  while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead])))
    ++lead;
  std::size_t end = s.size();
  while (end > lead && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return s.substr(lead, end - lead);
}

Rational number_with_unit(std::string_view s, std::size_t base) {
  std::size_t i = 0;
  Rational v = [&] {
    try {
      return unsigned_rational(s, i);
    } catch (const ParseError &e) {
      fail(base + static_cast<std::size_t>(e.position().column) - 1, e.message());
    }
  }();
  Rational factor;
  if (!unit_factor(s.substr(i), factor))
    fail(base + i, "unknown unit suffix '" + std::string(s.substr(i)) + "'");
  v *= factor;
  v.canonicalize();
  return v;
}

bool looks_iso(std::string_view s) {
  return s.size() >= 10 && is_digit(s[0]) && is_digit(s[1]) && is_digit(s[2]) && is_digit(s[3]) &&
         s[4] == '-';
}

unsigned fixed_digits(std::string_view s, std::size_t &i, std::size_t n, std::size_t base,
                      const char *what) {
  unsigned v = 0;
  for (std::size_t k = 0; k < n; ++k, ++i) {
    if (i >= s.size() || !is_digit(s[i]))
      fail(base + i, std::string("expected ") + what);
    v = v * 10 + static_cast<unsigned>(s[i] - '0');
  }
  return v;
}

void expect_char(std::string_view s, std::size_t &i, char c, std::size_t base) {
  if (i >= s.size() || s[i] != c)
    fail(base + i, std::string("expected '") + c + "'");
  ++i;
}

bool leap(long long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(long long y, unsigned m) {
  static constexpr unsigned dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : dim[m - 1];
}

Rational parse_iso(std::string_view s, std::size_t base) {
  std::size_t i = 0;
  long long year = fixed_digits(s, i, 4, base, "year");
  expect_char(s, i, '-', base);
  unsigned month = fixed_digits(s, i, 2, base, "month");
  expect_char(s, i, '-', base);
  unsigned day = fixed_digits(s, i, 2, base, "day");
  if (month < 1 || month > 12)
    fail(base + 5, "month out of range");
  if (day < 1 || day > days_in_month(year, month))
    fail(base + 8, "day out of range");
  unsigned hour = 0, minute = 0, second = 0;
  Rational frac = 0;
  if (i < s.size() && (s[i] == 'T' || s[i] == ' ')) {
    ++i;
    hour = fixed_digits(s, i, 2, base, "hour");
    expect_char(s, i, ':', base);
    minute = fixed_digits(s, i, 2, base, "minute");
    if (i < s.size() && s[i] == ':') {
      ++i;
      second = fixed_digits(s, i, 2, base, "second");
      if (i < s.size() && s[i] == '.') {
        ++i;
        std::string f = digits(s, i);
        if (f.empty() || f.size() > 64)
          fail(base + i, "bad fractional seconds");
        frac = Rational(mpz_class(f, 10)) / pow10(static_cast<unsigned>(f.size()));
      }
    }
    if (hour > 23 || minute > 59 || second > 59)
      fail(base, "time of day out of range");
  }
  long long offset = 0;
  if (i < s.size()) {
    if (s[i] == 'Z') {
      ++i;
    } else if (s[i] == '+' || s[i] == '-') {
      int sign = s[i] == '-' ? -1 : 1;
      ++i;
      unsigned oh = fixed_digits(s, i, 2, base, "offset hours");
      expect_char(s, i, ':', base);
      unsigned om = fixed_digits(s, i, 2, base, "offset minutes");
      if (oh > 23 || om > 59)
        fail(base, "offset out of range");
      offset = sign * (static_cast<long long>(oh) * 3600 + om * 60);
    }
  }
  if (i != s.size())
    fail(base + i, "trailing characters in timestamp");
  long long secs = days_from_civil(year, month, day) * 86400 + hour * 3600LL + minute * 60LL +
                   second - offset;
  Rational v = Rational(mpz_class(std::to_string(secs), 10)) + frac;
  v.canonicalize();
  return v;
}

struct Civil {
  long long y;
  unsigned m, d;
};

Civil civil_from_days(long long z) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long y = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

bool terminating(const mpz_class &den, unsigned &k) {
  mpz_class rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  k = std::max(twos, fives);
  return rest == 1;
}

std::string two(unsigned v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

} // namespace

long long days_from_civil(long long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

TimePoint parse_timepoint(std::string_view text) {
  std::size_t lead = 0;
  std::string_view s = trim(text, lead);
  if (s.empty())
    fail(lead, "expected a time point");
  if (s == "-inf")
    return TimePoint::neg_inf();
  if (s == "+inf" || s == "inf")
    return TimePoint::pos_inf();
  if (looks_iso(s))
    return TimePoint(parse_iso(s, lead));
  bool negative = false;
  std::size_t at = lead;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s.remove_prefix(1);
    ++at;
  }
  Rational v = number_with_unit(s, at);
  if (negative)
    v = -v;
  return TimePoint(v);
}

Rational parse_duration(std::string_view text) {
  std::size_t lead = 0;
  std::string_view s = trim(text, lead);
  if (s.empty())
    fail(lead, "expected a duration");
  if (s[0] == '-' || s[0] == '+')
    fail(lead, "durations are unsigned");
  if (s == "inf")
    fail(lead, "unbounded windows are not supported");
  return number_with_unit(s, lead);
}

std::string format_rational(const Rational &r) {
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  if (den == 1)
    return num.get_str();
  unsigned k = 0;
  if (!terminating(den, k))
    return num.get_str() + "/" + den.get_str();
  bool negative = num < 0;
  mpz_class scaled = abs(num) * (pow10(k).get_num() / den);
  std::string digits_str = scaled.get_str();
  if (digits_str.size() <= k)
    digits_str.insert(0, k + 1 - digits_str.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits_str.substr(0, digits_str.size() - k);
  out += '.';
  out += digits_str.substr(digits_str.size() - k);
  return out;
}

std::string format_timepoint(const TimePoint &t, TimeStyle style) {
  if (t.is_neg_inf())
    return "-inf";
  if (t.is_pos_inf())
    return "+inf";
  if (style == TimeStyle::Seconds)
    return format_rational(t.value());

  const Rational &v = t.value();
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  Rational frac = v - Rational(whole);
  unsigned k = 0;
  if (!whole.fits_slong_p() || !terminating(frac.get_den(), k))
    return format_rational(v);
  long long secs = whole.get_si();
  long long days = secs >= 0 ? secs / 86400 : -((-secs + 86399) / 86400);
  long long rem = secs - days * 86400;
  Civil c = civil_from_days(days);
  if (c.y < 0 || c.y > 9999)
    return format_rational(v);
  std::string year = std::to_string(c.y);
  year.insert(0, 4 - year.size(), '0');
  std::string out = year + "-" + two(c.m) + "-" + two(c.d) + "T" +
                    two(static_cast<unsigned>(rem / 3600)) + ":" +
                    two(static_cast<unsigned>(rem % 3600 / 60)) + ":" +
                    two(static_cast<unsigned>(rem % 60));
  if (frac != 0) {
    std::string f = format_rational(frac); // "0.xyz"
    out += f.substr(1);
  }
  return out;
}

} // namespace chronolog
