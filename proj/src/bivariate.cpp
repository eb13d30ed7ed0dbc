#include "secmom/bivariate.hpp"

#include <algorithm>
#include <sstream>

#include "secmom/error.hpp"

namespace secmom {

BiPoly::BiPoly(const Rational& constant) {
  if (constant != 0) c_ = {{constant}};
}

BiPoly BiPoly::monomial(unsigned i, unsigned j, const Rational& coeff) {
  BiPoly p;
  p.set(i, j, coeff);
  return p;
}
BiPoly BiPoly::x_pow(unsigned e, const Rational& coeff) { return monomial(e, 0, coeff); }
BiPoly BiPoly::y_pow(unsigned e, const Rational& coeff) { return monomial(0, e, coeff); }

Rational BiPoly::coeff(unsigned i, unsigned j) const {
  if (i >= c_.size() || j >= c_[i].size()) return 0;
  return c_[i][j];
}

void BiPoly::set(unsigned i, unsigned j, const Rational& v) {
  if (i >= c_.size()) c_.resize(i + 1);
  if (j >= c_[i].size()) c_[i].resize(j + 1, 0);
  c_[i][j] = v;
  trim();
}

int BiPoly::degree_y() const {
  int d = -1;
  for (const auto& r : c_) d = std::max(d, static_cast<int>(r.size()) - 1);
  return d;
}

void BiPoly::trim() {
  for (auto& r : c_)
    while (!r.empty() && r.back() == 0) r.pop_back();
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    auto& r = c_[i];
    if (o.c_[i].size() > r.size()) r.resize(o.c_[i].size(), 0);
    for (std::size_t j = 0; j < o.c_[i].size(); ++j) r[j] += o.c_[i][j];
  }
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    auto& r = c_[i];
    if (o.c_[i].size() > r.size()) r.resize(o.c_[i].size(), 0);
    for (std::size_t j = 0; j < o.c_[i].size(); ++j) r[j] -= o.c_[i][j];
  }
  trim();
  return *this;
}

BiPoly& BiPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& r : c_)
    for (auto& v : r) v *= s;
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, {});
  Rational tmp;
  for (std::size_t i1 = 0; i1 < a.c_.size(); ++i1)
    for (std::size_t i2 = 0; i2 < b.c_.size(); ++i2) {
      const auto& ra = a.c_[i1];
      const auto& rb = b.c_[i2];
      if (ra.empty() || rb.empty()) continue;
      auto& r = out.c_[i1 + i2];
      if (r.size() < ra.size() + rb.size() - 1) r.resize(ra.size() + rb.size() - 1, 0);
      for (std::size_t j1 = 0; j1 < ra.size(); ++j1) {
        if (ra[j1] == 0) continue;
        for (std::size_t j2 = 0; j2 < rb.size(); ++j2) {
          if (rb[j2] == 0) continue;
          tmp = ra[j1] * rb[j2];
          r[j1 + j2] += tmp;
        }
      }
    }
  out.trim();
  return out;
}

BiPoly BiPoly::exact_divide(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw DomainError("BiPoly::exact_divide: division by zero");
  // Lex order with x first: the leading term sits in the top x-row at its
  // highest y-degree.
  const unsigned bi = static_cast<unsigned>(b.c_.size() - 1);
  const unsigned bj = static_cast<unsigned>(b.c_[bi].size() - 1);
  const Rational lead = b.c_[bi][bj];
  BiPoly rem = a, quot;
  while (!rem.is_zero()) {
    const unsigned ri = static_cast<unsigned>(rem.c_.size() - 1);
    const unsigned rj = static_cast<unsigned>(rem.c_[ri].size() - 1);
    if (ri < bi || rj < bj)
      throw ConsistencyError("BiPoly::exact_divide: nonzero remainder");
    BiPoly term = monomial(ri - bi, rj - bj, rem.c_[ri][rj] / lead);
    quot += term;
    rem -= term * b;
  }
  return quot;
}

BiPoly BiPoly::divide_by_y_minus_x(unsigned e) const {
  if (is_zero()) return {};
  // P(x, x + t) = sum c_ij x^i sum_r C(j, r) x^(j-r) t^r.
  const int dx = degree_x(), dy = degree_y();
  std::vector<std::vector<Rational>> xt(dx + dy + 1, std::vector<Rational>(dy + 1, 0));
  for (int i = 0; i <= dx; ++i)
    for (int j = 0; j < static_cast<int>(c_[i].size()); ++j) {
      if (c_[i][j] == 0) continue;
      for (int r = 0; r <= j; ++r)
        xt[i + j - r][r] += c_[i][j] * Rational(binomial(j, r));
    }
  for (auto& row : xt)
    for (unsigned r = 0; r < e && r < row.size(); ++r)
      if (row[r] != 0)
        throw ConsistencyError("divide_by_y_minus_x: polynomial not divisible by (y-x)^" +
                               std::to_string(e));
  // Substitute t = y - x into the quotient sum d_{i,r} x^i t^(r-e).
  BiPoly out;
  for (std::size_t i = 0; i < xt.size(); ++i)
    for (std::size_t r = e; r < xt[i].size(); ++r) {
      if (xt[i][r] == 0) continue;
      const unsigned s = static_cast<unsigned>(r - e);
      for (unsigned u = 0; u <= s; ++u) {
        Rational v = xt[i][r] * Rational(binomial(s, u));
        if ((s - u) % 2 == 1) v = -v;
        out += monomial(static_cast<unsigned>(i) + s - u, u, v);
      }
    }
  return out;
}

std::string BiPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;)
    for (std::size_t j = c_[i].size(); j-- > 0;) {
      if (c_[i][j] == 0) continue;
      Rational v = c_[i][j];
      if (!first) os << (v < 0 ? " - " : " + ");
      else if (v < 0) os << "-";
      first = false;
      Rational a = abs(v);
      bool unit = a == 1 && (i > 0 || j > 0);
      if (!unit) os << secmom::to_string(a);
      if (i > 0) os << (unit ? "" : "*") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
      if (j > 0) os << ((unit && i == 0) ? "" : "*") << "y" << (j > 1 ? "^" + std::to_string(j) : "");
    }
  return os.str();
}

BivariateSeries::BivariateSeries(unsigned dx, unsigned dy)
    : dx_(dx), dy_(dy), c_(dx + 1, std::vector<Rational>(dy + 1, 0)) {}

BivariateSeries BivariateSeries::from_poly(const BiPoly& p, unsigned dx, unsigned dy) {
  BivariateSeries s(dx, dy);
  const auto& rows = p.rows();
  for (unsigned i = 0; i <= dx && i < rows.size(); ++i)
    for (unsigned j = 0; j <= dy && j < rows[i].size(); ++j) s.c_[i][j] = rows[i][j];
  return s;
}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& o) {
  if (o.dx_ != dx_ || o.dy_ != dy_) throw DomainError("series orders differ");
  for (unsigned i = 0; i <= dx_; ++i)
    for (unsigned j = 0; j <= dy_; ++j) c_[i][j] += o.c_[i][j];
  return *this;
}

BivariateSeries& BivariateSeries::operator*=(const Rational& s) {
  for (auto& r : c_)
    for (auto& v : r) v *= s;
  return *this;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.dx_ != b.dx_ || a.dy_ != b.dy_) throw DomainError("series orders differ");
  BivariateSeries out(a.dx_, a.dy_);
  Rational tmp;
  for (unsigned i1 = 0; i1 <= a.dx_; ++i1)
    for (unsigned j1 = 0; j1 <= a.dy_; ++j1) {
      const Rational& va = a.c_[i1][j1];
      if (va == 0) continue;
      for (unsigned i2 = 0; i1 + i2 <= a.dx_; ++i2)
        for (unsigned j2 = 0; j1 + j2 <= a.dy_; ++j2) {
          const Rational& vb = b.c_[i2][j2];
          if (vb == 0) continue;
          tmp = va * vb;
          out.c_[i1 + i2][j1 + j2] += tmp;
        }
    }
  return out;
}

BivariateSeries BivariateSeries::divide(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.dx_ != b.dx_ || a.dy_ != b.dy_) throw DomainError("series orders differ");
  const Rational& b0 = b.c_[0][0];
  if (b0 == 0) throw DomainError("BivariateSeries::divide: divisor has zero constant term");
  BivariateSeries q(a.dx_, a.dy_);
  // Solve q * b = a degree by degree in (i, j) lexicographically.
  for (unsigned i = 0; i <= a.dx_; ++i)
    for (unsigned j = 0; j <= a.dy_; ++j) {
      Rational acc = a.c_[i][j];
      for (unsigned i2 = 0; i2 <= i; ++i2)
        for (unsigned j2 = 0; j2 <= j; ++j2) {
          if (i2 == 0 && j2 == 0) continue;
          if (b.c_[i2][j2] == 0) continue;
          acc -= b.c_[i2][j2] * q.c_[i - i2][j - j2];
        }
      q.c_[i][j] = acc / b0;
    }
  return q;
}

}  // namespace secmom
