#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace causal {

/// Exact arbitrary-precision rational number, always kept in canonical form
/// (reduced, positive denominator).
///
/// Text syntax is "p/q" or the integer shorthand "p"; a leading '-' is allowed
/// on the numerator only.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);

  static Rational parse(std::string_view text);

  std::string str() const;
  std::string numerator_str() const;
  std::string denominator_str() const;

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const;
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.value_ = -a.value_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

Rational abs(const Rational& r);

}  // namespace causal
