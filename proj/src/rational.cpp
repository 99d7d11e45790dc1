#include "paradoxlab/rational.hpp"

#include "paradoxlab/error.hpp"

#include <ostream>

namespace paradoxlab {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::PreconditionViolated, "zero denominator");
  value_ = den < 0 ? Value(BigInt(-num), BigInt(-den)) : Value(num, den);
}

Rational Rational::from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw Error(ErrorKind::Parse, "not a rational: " + text);
  }
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw Error(ErrorKind::PreconditionViolated, "division by zero");
  value_ /= o.value_;
  return *this;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const {
  const BigInt den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dyadic(unsigned n) {
  BigInt den = 1;
  den <<= n;
  return Rational(BigInt(1), den);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace paradoxlab
