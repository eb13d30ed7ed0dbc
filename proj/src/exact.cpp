#include "secmom/exact.hpp"

#include <cctype>

#include "secmom/error.hpp"

namespace secmom {

Integer binomial(long n, long r) {
  if (r < 0) return 0;
  if (n >= 0) {
    if (r > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(r));
    return out;
  }
  // C(n, r) = (-1)^r C(r - n - 1, r) for negative n.
  Integer out = binomial(r - n - 1, r);
  return (r % 2 == 0) ? out : Integer(-out);
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer barnes_g(unsigned k) {
  if (k == 0) throw DomainError("barnes_g: k must be >= 1");
  Integer g = 1;
  for (unsigned j = 1; j < k; ++j) g *= factorial(j);
  return g;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw DomainError("empty rational");
  auto check_digits = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) throw DomainError("malformed rational '" + text + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw DomainError("malformed rational '" + text + "'");
  };
  Rational out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_digits(num, true);
    check_digits(den, false);
    Integer d(den);
    if (d == 0) throw DomainError("zero denominator in '" + text + "'");
    out = Rational(Integer(num[0] == '+' ? num.substr(1) : num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    check_digits(whole, false);
    check_digits(frac, false);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(Integer(whole) * scale + Integer(frac), scale);
    if (neg) out = -out;
  } else {
    check_digits(s, true);
    out = Rational(Integer(s[0] == '+' ? s.substr(1) : s));
  }
  out.canonicalize();
  return out;
}

bool is_integer(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_den() == 1;
}

Integer require_integer(const Rational& q, const char* what) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() != 1)
    throw ConsistencyError(std::string(what) + ": expected an integer, got " +
                           to_string(c));
  return c.get_num();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace secmom
