#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace clouds {

/// Exact rational number in canonical (reduced, positive denominator) form.
///
/// Thin value wrapper around GMP's mpq_class; every probability, level and
/// mass in the library is one of these. Floating point only appears when a
/// value is explicitly converted for display.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t numerator);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);

  /// Parses "3/4", "-2", "0.75", "1e-2" or "1.5E3" exactly.
  static Rational parse(std::string_view text);

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  std::string numerator_string() const;
  std::string denominator_string() const;
  bool is_integer() const;
  int sign() const { return sgn(value_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Rounded decimal with exactly `places` digits after the point.
  std::string to_decimal(int places) const;
  double to_double() const { return value_.get_d(); }

  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

namespace literals {
/// 3_q == Rational(3); handy in tests and fixtures.
inline Rational operator""_q(unsigned long long v) {
  return Rational(static_cast<std::int64_t>(v));
}
}  // namespace literals

}  // namespace clouds

template <>
struct std::hash<clouds::Rational> {
  std::size_t operator()(const clouds::Rational& r) const noexcept { return r.hash(); }
};
