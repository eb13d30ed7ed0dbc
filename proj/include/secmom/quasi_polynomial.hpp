#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secmom/exact.hpp"

namespace secmom {

/// Dense univariate polynomial, coefficient i multiplies v^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  Rational operator()(const Rational& v) const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  std::string to_string(const std::string& var) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Rational> c_;
};

/// One polynomial per residue class of the argument modulo the period.
class QuasiPolynomial {
 public:
  QuasiPolynomial(std::vector<Polynomial> pieces, std::string var = "n");

  unsigned period() const { return static_cast<unsigned>(pieces_.size()); }
  const std::string& variable() const { return var_; }
  const Polynomial& piece(unsigned residue) const { return pieces_.at(residue); }
  Rational operator()(long v) const;
  int degree() const;
  std::string to_string() const;

 private:
  std::vector<Polynomial> pieces_;
  std::string var_;
};

/// Polynomial pieces on closed rational intervals.
class PiecewisePolynomial {
 public:
  struct Piece {
    Rational lo, hi;
    Polynomial poly;
  };

  /// Throws DomainError on overlapping intervals and ConsistencyError when
  /// adjacent pieces disagree at a shared endpoint.
  explicit PiecewisePolynomial(std::vector<Piece> pieces);

  /// nullopt when c lies outside every piece.
  std::optional<Rational> operator()(const Rational& c) const;
  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
};

}  // namespace secmom
