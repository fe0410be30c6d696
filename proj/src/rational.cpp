#include "causal/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace causal {

namespace {

bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, 1);
  value_ /= denominator;
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!is_digit_run(digits) || !is_digit_run(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
  Rational r;
  r.value_ = mpq_class(n, d);
  r.value_.canonicalize();
  return r;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace causal
