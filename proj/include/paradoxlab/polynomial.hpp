#pragma once

#include "paradoxlab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace paradoxlab {

/// Univariate polynomial with exact coefficients in ascending degree.
/// Trailing zero coefficients are stripped; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial monomial(const Rational& c, int degree);
  static Polynomial identity() { return monomial(Rational(1), 1); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coefficient(int degree) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;

  Polynomial monic() const;
  /// Quotient and remainder of division by (x - root).
  std::pair<Polynomial, Rational> divide_by_root(const Rational& root) const;
  /// b^2 - 4ac; only defined for degree 2.
  Rational discriminant() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// e.g. "p^2 - 3p + 4" in the variable `var`.
  std::string str(const std::string& var = "p") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace paradoxlab
