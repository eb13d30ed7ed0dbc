#pragma once

#include <vector>

#include "secmom/bivariate.hpp"
#include "secmom/ensemble.hpp"

namespace secmom::detgen {

/// Square matrix of bivariate polynomials.
class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t n) : n_(n), a_(n * n) {}
  std::size_t size() const { return n_; }
  BiPoly& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BiPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void swap_rows(std::size_t i, std::size_t j);

 private:
  std::size_t n_;
  std::vector<BiPoly> a_;
};

enum class DetMethod { cofactor, bareiss };

/// Cofactor expansion along rows with memoized minors, or fraction-free
/// elimination with exact polynomial division.
BiPoly determinant(const PolyMatrix& m, DetMethod method = DetMethod::bareiss);

struct AlternantResult {
  BiPoly value;
  bool degenerate = false;  ///< repeated exponents, determinant vanishes
};

/// det M / (y - x)^(k^2), M the 2k x 2k matrix with rows
/// d^i/dx^i x^alpha_j (i < k) and d^i/dy^i y^alpha_j (i < k).
/// With `binomial_rows` the i-th derivative is divided by i!.
AlternantResult confluent_alternant(unsigned k, const std::vector<unsigned>& alpha,
                                    bool binomial_rows = false);

/// The 2k x 2k binomial-entry matrix whose determinant, divided by
/// (y - x)^(k^2), is the polynomial part of the moment generating function.
PolyMatrix moment_matrix(Ensemble ensemble, unsigned k, unsigned N);

/// The generating function of J(m, n; N) truncated to x^dx, y^dy. Throws
/// DomainError if either order exceeds (2N+1)k.
BivariateSeries gen_series(Ensemble ensemble, unsigned k, unsigned N, unsigned dx,
                           unsigned dy, DetMethod method = DetMethod::bareiss);

/// Series of (1 - x^2)^(-a) (orders dx, dy) from closed-form binomials.
BivariateSeries inverse_power_x2(long a, unsigned dx, unsigned dy);
BivariateSeries inverse_power_y2(long a, unsigned dx, unsigned dy);
BivariateSeries inverse_power_xy(long a, unsigned dx, unsigned dy);

}  // namespace secmom::detgen
