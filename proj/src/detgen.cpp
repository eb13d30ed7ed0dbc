#include "secmom/detgen.hpp"

#include <map>
#include <set>

#include "secmom/error.hpp"

namespace secmom::detgen {

void PolyMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < n_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

namespace {

BiPoly det_cofactor(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return BiPoly(1);
  if (n > 20) throw UnsupportedError("cofactor determinant: dimension too large");
  // minor(r, cols) = det of rows r..n-1 restricted to the column set cols.
  std::map<unsigned long, BiPoly> memo;
  auto rec = [&](auto&& self, std::size_t r, unsigned long cols) -> BiPoly {
    if (r == n) return BiPoly(1);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    BiPoly acc;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols >> c & 1ul)) continue;
      if (!m(r, c).is_zero()) {
        BiPoly term = m(r, c) * self(self, r + 1, cols & ~(1ul << c));
        if (sign > 0) acc += term;
        else acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(rec, 0, (1ul << n) - 1);
}

BiPoly det_bareiss(PolyMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return BiPoly(1);
  BiPoly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return BiPoly();
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BiPoly num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = BiPoly::exact_divide(num, prev);
      }
    prev = a(k, k);
  }
  BiPoly d = a(n - 1, n - 1);
  if (sign < 0) d *= Rational(-1);
  return d;
}

}  // namespace

BiPoly determinant(const PolyMatrix& m, DetMethod method) {
  return method == DetMethod::cofactor ? det_cofactor(m) : det_bareiss(m);
}

AlternantResult confluent_alternant(unsigned k, const std::vector<unsigned>& alpha,
                                    bool binomial_rows) {
  if (alpha.size() != 2 * k)
    throw DomainError("confluent_alternant: need 2k exponents");
  if (std::set<unsigned>(alpha.begin(), alpha.end()).size() != alpha.size())
    return {BiPoly(), true};
  PolyMatrix m(2 * k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < 2 * k; ++j) {
      if (alpha[j] < i) continue;
      // i-th derivative of x^a is a!/(a-i)! x^(a-i).
      Integer f = binomial(alpha[j], i);
      if (!binomial_rows) f *= factorial(i);
      m(i, j) = BiPoly::x_pow(alpha[j] - i, Rational(f));
      m(k + i, j) = BiPoly::y_pow(alpha[j] - i, Rational(f));
    }
  BiPoly d = determinant(m);
  return {d.divide_by_y_minus_x(k * k), false};
}

PolyMatrix moment_matrix(Ensemble ensemble, unsigned k, unsigned N) {
  PolyMatrix m(2 * k);
  const long top = ensemble == Ensemble::symplectic ? 2L * N + 4L * k + 1 : 2L * N + 4L * k;
  for (unsigned i = 1; i <= k; ++i)
    for (unsigned j = 1; j <= 2 * k; ++j) {
      const long hi_exp = top + 1 - static_cast<long>(j) - static_cast<long>(i);
      Rational hi(binomial(top - static_cast<long>(j), i - 1));
      Rational lo(binomial(static_cast<long>(j) - 1, i - 1));
      BiPoly ex = BiPoly::x_pow(static_cast<unsigned>(hi_exp), hi);
      BiPoly ey = BiPoly::y_pow(static_cast<unsigned>(hi_exp), hi);
      if (lo != 0) {
        ex -= BiPoly::x_pow(j - i, lo);
        ey -= BiPoly::y_pow(j - i, lo);
      }
      m(i - 1, j - 1) = ex;
      m(k + i - 1, j - 1) = ey;
    }
  return m;
}

BivariateSeries inverse_power_x2(long a, unsigned dx, unsigned dy) {
  BivariateSeries s(dx, dy);
  for (unsigned i = 0; 2 * i <= dx; ++i) s.at(2 * i, 0) = Rational(binomial(a + i - 1, i));
  return s;
}

BivariateSeries inverse_power_y2(long a, unsigned dx, unsigned dy) {
  BivariateSeries s(dx, dy);
  for (unsigned j = 0; 2 * j <= dy; ++j) s.at(0, 2 * j) = Rational(binomial(a + j - 1, j));
  return s;
}

BivariateSeries inverse_power_xy(long a, unsigned dx, unsigned dy) {
  BivariateSeries s(dx, dy);
  for (unsigned i = 0; i <= dx && i <= dy; ++i) s.at(i, i) = Rational(binomial(a + i - 1, i));
  return s;
}

BivariateSeries gen_series(Ensemble ensemble, unsigned k, unsigned N, unsigned dx,
                           unsigned dy, DetMethod method) {
  if (k == 0) throw DomainError("gen_series: k must be >= 1");
  const unsigned limit = (2 * N + 1) * k;
  if (dx > limit || dy > limit)
    throw DomainError("gen_series: truncation order exceeds (2N+1)k = " + std::to_string(limit));
  BiPoly det = determinant(moment_matrix(ensemble, k, N), method);
  BiPoly poly = det.divide_by_y_minus_x(k * k);
  const long a = ensemble == Ensemble::symplectic ? long(k) * (k + 1) / 2 : long(k) * (k - 1) / 2;
  BivariateSeries s = BivariateSeries::from_poly(poly, dx, dy);
  s = s * inverse_power_x2(a, dx, dy);
  s = s * inverse_power_y2(a, dx, dy);
  s = s * inverse_power_xy(long(k) * k, dx, dy);
  if (ensemble == Ensemble::orthogonal) {
    // F(x, y) + F(-x, -y): twice the even-total-degree part.
    for (unsigned i = 0; i <= dx; ++i)
      for (unsigned j = 0; j <= dy; ++j) s.at(i, j) = (i + j) % 2 == 0 ? Rational(2 * s.coeff(i, j)) : Rational(0);
  }
  return s;
}

}  // namespace secmom::detgen
