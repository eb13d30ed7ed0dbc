#include <algorithm>

#include "secmom/error.hpp"
#include "secmom/funcfield.hpp"

namespace secmom::ff {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // a^(p-2)
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(std::uint64_t q) {
  if (!is_prime(q) || q == 2)
    throw UnsupportedError("q = " + std::to_string(q) + ": only odd primes are supported");
}

std::uint64_t ipow(std::uint64_t q, unsigned n) {
  std::uint64_t r = 1;
  while (n--) r *= q;
  return r;
}

FqPoly::FqPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw DomainError("FqPoly: modulus must be >= 2");
  for (auto& x : c_) x %= p_;
  trim();
}

FqPoly FqPoly::monomial(std::uint32_t p, unsigned degree, std::uint32_t c) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c;
  return FqPoly(p, std::move(v));
}

FqPoly FqPoly::monic(std::uint32_t p, unsigned n, std::uint64_t idx) {
  std::vector<std::uint32_t> v(n + 1);
  for (unsigned j = 0; j < n; ++j) {
    v[j] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  v[n] = 1;
  return FqPoly(p, std::move(v));
}

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t FqPoly::monic_index() const {
  if (!is_monic()) throw DomainError("monic_index: " + to_string() + " is not monic");
  std::uint64_t idx = 0;
  for (int j = degree() - 1; j >= 0; --j) idx = idx * p_ + c_[j];
  return idx;
}

std::uint32_t FqPoly::eval(std::uint32_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
  return static_cast<std::uint32_t>(acc);
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  std::vector<std::uint32_t> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((*this)[i] + o[i]) % p_;
  return FqPoly(p_, std::move(v));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  std::vector<std::uint32_t> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((*this)[i] + p_ - o[i]) % p_;
  return FqPoly(p_, std::move(v));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(p_);
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(c_[i]) * o.c_[j]) % p_;
  return FqPoly(p_, std::vector<std::uint32_t>(acc.begin(), acc.end()));
}

void FqPoly::divmod(const FqPoly& m, FqPoly* q, FqPoly* r) const {
  if (m.is_zero()) throw DomainError("FqPoly: division by zero");
  std::vector<std::uint32_t> rem = c_;
  const int dm = m.degree();
  const std::uint32_t lead_inv = inv_mod(m.c_.back(), p_);
  std::vector<std::uint32_t> quo(std::max(0, degree() - dm + 1), 0);
  for (int d = degree(); d >= dm; --d) {
    const std::uint32_t c = rem[d];
    if (c == 0) continue;
    const std::uint64_t f = std::uint64_t(c) * lead_inv % p_;
    quo[d - dm] = static_cast<std::uint32_t>(f);
    for (int i = 0; i <= dm; ++i)
      rem[d - dm + i] = static_cast<std::uint32_t>((rem[d - dm + i] + p_ - f * m.c_[i] % p_) % p_);
  }
  if (q) *q = FqPoly(p_, std::move(quo));
  if (r) *r = FqPoly(p_, std::move(rem));
}

FqPoly FqPoly::operator%(const FqPoly& m) const {
  FqPoly r(p_);
  divmod(m, nullptr, &r);
  return r;
}

FqPoly FqPoly::quotient(const FqPoly& m) const {
  FqPoly q(p_);
  divmod(m, &q, nullptr);
  return q;
}

FqPoly FqPoly::powmod(std::uint64_t e, const FqPoly& m) const {
  FqPoly result = FqPoly(p_, {1}) % m, base = *this % m;
  for (; e; e >>= 1) {
    if (e & 1) result = (result * base) % m;
    base = (base * base) % m;
  }
  return result;
}

FqPoly FqPoly::make_monic() const {
  if (is_zero()) return *this;
  const std::uint64_t inv = inv_mod(c_.back(), p_);
  std::vector<std::uint32_t> v(c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint32_t>(c_[i] * inv % p_);
  return FqPoly(p_, std::move(v));
}

std::string FqPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const std::uint32_t c = c_[d];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0 || c != 1) out += std::to_string(c);
    if (d >= 1) out += var;
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.make_monic();
}

bool is_irreducible(const FqPoly& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const std::uint32_t p = f.modulus();
  const FqPoly x = FqPoly::monomial(p, 1);
  // h[i] = x^(p^i) mod f
  std::vector<FqPoly> h{x % f};
  for (int i = 1; i <= d; ++i) h.push_back(h.back().powmod(p, f));
  if (!(h[d] == x % f)) return false;
  for (int r = 2; r <= d; ++r) {
    if (d % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    if (gcd(f, h[d / r] - x).degree() != 0) return false;
  }
  return true;
}

int legendre(std::uint32_t q, std::uint64_t a) {
  a %= q;
  if (a == 0) return 0;
  std::uint64_t r = 1, b = a;
  for (std::uint64_t e = (q - 1) / 2; e; e >>= 1) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
  }
  return r == 1 ? 1 : -1;
}

int chi2(std::uint32_t q, const FqPoly& f) {
  require_odd_prime(q);
  return legendre(q, f[0]);
}

DivisorTable::DivisorTable(std::uint32_t q, unsigned l, unsigned n_max) : q_(q), l_(l), n_max_(n_max) {
  if (!is_prime(q)) throw UnsupportedError("divisor_table: q must be prime");
  if (l == 0) throw DomainError("divisor_table: l must be >= 1");
  for (unsigned n = 0; n <= n_max; ++n) t_.emplace_back(ipow(q, n), 1);
  std::vector<std::uint32_t> prod;
  for (unsigned step = 1; step < l; ++step) {
    std::vector<std::vector<std::uint64_t>> next;
    for (unsigned n = 0; n <= n_max; ++n) next.emplace_back(ipow(q, n), 0);
    for (unsigned m = 0; m <= n_max; ++m)
      for (unsigned j = 0; j <= m; ++j) {
        const std::uint64_t ng = ipow(q, j), nh = ipow(q, m - j);
        for (std::uint64_t gi = 0; gi < ng; ++gi) {
          const FqPoly g = FqPoly::monic(q, j, gi);
          for (std::uint64_t hi = 0; hi < nh; ++hi) {
            const std::uint64_t v = t_[m - j][hi];
            next[m][(g * FqPoly::monic(q, m - j, hi)).monic_index()] += v;
          }
        }
      }
    t_ = std::move(next);
  }
}

std::uint64_t DivisorTable::operator()(const FqPoly& f) const {
  if (f.degree() < 0 || static_cast<unsigned>(f.degree()) > n_max_)
    throw DomainError("DivisorTable: degree out of range");
  return at(static_cast<unsigned>(f.degree()), f.monic_index());
}

long long chi2_weighted_sum(std::uint32_t q, unsigned l, unsigned n) {
  require_odd_prime(q);
  const DivisorTable d(q, l, n);
  long long total = 0;
  const std::uint64_t count = ipow(q, n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const std::uint32_t c0 = n == 0 ? 1 : static_cast<std::uint32_t>(idx % q);
    total += static_cast<long long>(d.at(n, idx)) * legendre(q, c0);
  }
  return total;
}

std::vector<FqPoly> irreducibles(std::uint32_t q, unsigned d) {
  std::vector<FqPoly> out;
  const std::uint64_t count = ipow(q, d);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FqPoly f = FqPoly::monic(q, d, idx);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace secmom::ff
