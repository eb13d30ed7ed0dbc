#pragma once

#include <string>
#include <vector>

#include "secmom/exact.hpp"

namespace secmom {

/// Polynomial in x, y with exact rational coefficients, stored densely.
/// Degrees are trimmed after every operation so equality is structural.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(const Rational& constant);  // NOLINT: implicit on purpose
  BiPoly(int constant) : BiPoly(Rational(constant)) {}

  static BiPoly x_pow(unsigned e, const Rational& coeff = 1);
  static BiPoly y_pow(unsigned e, const Rational& coeff = 1);
  static BiPoly monomial(unsigned i, unsigned j, const Rational& coeff = 1);

  /// Coefficient of x^i y^j, zero outside the stored range.
  Rational coeff(unsigned i, unsigned j) const;
  void set(unsigned i, unsigned j, const Rational& v);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree_x() const { return static_cast<int>(c_.size()) - 1; }
  int degree_y() const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const Rational& s);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) { return a *= Rational(-1); }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  /// Exact quotient a / b. Throws ConsistencyError when the remainder is
  /// nonzero and DomainError when b is zero.
  static BiPoly exact_divide(const BiPoly& a, const BiPoly& b);

  /// Exact quotient by (y - x)^e via the substitution y = x + t.
  BiPoly divide_by_y_minus_x(unsigned e) const;

  std::string to_string() const;

  /// Rows indexed by x-degree, each trimmed of trailing zeros.
  const std::vector<std::vector<Rational>>& rows() const { return c_; }

 private:
  void trim();
  std::vector<std::vector<Rational>> c_;
};

/// Truncated power series in x, y: coefficients of x^i y^j for i <= Dx,
/// j <= Dy. Products truncate to the same orders.
class BivariateSeries {
 public:
  BivariateSeries(unsigned dx, unsigned dy);
  static BivariateSeries from_poly(const BiPoly& p, unsigned dx, unsigned dy);

  unsigned order_x() const { return dx_; }
  unsigned order_y() const { return dy_; }
  const Rational& coeff(unsigned i, unsigned j) const { return c_[i][j]; }
  Rational& at(unsigned i, unsigned j) { return c_[i][j]; }

  BivariateSeries& operator+=(const BivariateSeries& o);
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
  BivariateSeries& operator*=(const Rational& s);

  /// a / b for b with nonzero constant term.
  static BivariateSeries divide(const BivariateSeries& a, const BivariateSeries& b);

  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
    return a.dx_ == b.dx_ && a.dy_ == b.dy_ && a.c_ == b.c_;
  }

 private:
  unsigned dx_, dy_;
  std::vector<std::vector<Rational>> c_;
};

}  // namespace secmom
