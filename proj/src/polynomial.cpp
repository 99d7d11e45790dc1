#include "paradoxlab/polynomial.hpp"

#include "paradoxlab/error.hpp"

#include <algorithm>

namespace paradoxlab {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[degree];
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * *this;
}

std::pair<Polynomial, Rational> Polynomial::divide_by_root(const Rational& root) const {
  if (coeffs_.empty()) return {Polynomial{}, Rational(0)};
  std::vector<Rational> quotient(coeffs_.size() - 1);
  Rational carry(0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    carry = coeffs_[i] + carry * root;
    if (i > 0) {
      quotient[i - 1] = carry;
    }
  }
  return {Polynomial(std::move(quotient)), carry};
}

Rational Polynomial::discriminant() const {
  if (degree() != 2) throw Error(ErrorKind::PreconditionViolated, "discriminant needs a quadratic");
  return coeffs_[1] * coeffs_[1] - Rational(4) * coeffs_[2] * coeffs_[0];
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i));
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
  std::vector<Rational> out = a.coeffs_;
  for (Rational& x : out) x *= c;
  return Polynomial(std::move(out));
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    Rational c = coeffs_[d];
    if (c.is_zero()) continue;
    const bool negative = c < Rational(0);
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = c == Rational(1);
    if (!unit || d == 0) out += c.str();
    if (d >= 1) out += var;
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

}  // namespace paradoxlab
