#include "secmom/quasi_polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "secmom/error.hpp"

namespace secmom {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& v : c_) v.canonicalize();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& v) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
  return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational a = abs(c_[i]);
    if (!first) os << (c_[i] < 0 ? " - " : " + ");
    else if (c_[i] < 0) os << "-";
    first = false;
    if (i == 0 || a != 1) os << secmom::to_string(a) << (i > 0 ? "*" : "");
    if (i > 0) os << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

QuasiPolynomial::QuasiPolynomial(std::vector<Polynomial> pieces, std::string var)
    : pieces_(std::move(pieces)), var_(std::move(var)) {
  if (pieces_.empty()) throw DomainError("QuasiPolynomial: period must be >= 1");
}

Rational QuasiPolynomial::operator()(long v) const {
  const long r = static_cast<long>(pieces_.size());
  return pieces_[static_cast<std::size_t>(((v % r) + r) % r)](Rational(v));
}

int QuasiPolynomial::degree() const {
  int d = -1;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

std::string QuasiPolynomial::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < pieces_.size(); ++r) {
    if (r) os << "; ";
    os << var_ << "%" << pieces_.size() << "==" << r << ": " << pieces_[r].to_string(var_);
  }
  return os.str();
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].lo > pieces_[i].hi) throw DomainError("PiecewisePolynomial: empty interval");
    if (i == 0) continue;
    const auto& a = pieces_[i - 1];
    const auto& b = pieces_[i];
    if (b.lo < a.hi) throw DomainError("PiecewisePolynomial: overlapping intervals");
    if (b.lo == a.hi && a.poly(a.hi) != b.poly(b.lo))
      throw ConsistencyError("PiecewisePolynomial: pieces disagree at " + secmom::to_string(a.hi));
  }
}

std::optional<Rational> PiecewisePolynomial::operator()(const Rational& c) const {
  for (const auto& p : pieces_)
    if (p.lo <= c && c <= p.hi) return p.poly(c);
  return std::nullopt;
}

}  // namespace secmom
