#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "secmom/error.hpp"
#include "secmom/funcfield.hpp"

namespace secmom::ff {

Residue residue_mul(std::uint32_t q, const Residue& a, const Residue& b) {
  const std::size_t k = a.size();
  Residue r(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < k; ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % q);
  }
  return r;
}

Residue residue_inverse(std::uint32_t q, const Residue& a) {
  if (a.empty() || a[0] % q == 0) throw DomainError("residue_inverse: not a unit");
  const std::size_t k = a.size();
  Residue r(k, 0);
  std::uint64_t inv0 = 1, b = a[0];
  for (std::uint64_t e = q - 2; e; e >>= 1) {
    if (e & 1) inv0 = inv0 * b % q;
    b = b * b % q;
  }
  r[0] = static_cast<std::uint32_t>(inv0);
  for (std::size_t n = 1; n < k; ++n) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i <= n; ++i) s = (s + std::uint64_t(a[i]) * r[n - i]) % q;
    r[n] = static_cast<std::uint32_t>((q - s) % q * inv0 % q);
  }
  return r;
}

Residue residue_sigma(std::uint32_t q, const Residue& a) {
  Residue r = a;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = (q - r[i]) % q;
  return r;
}

std::uint64_t residue_code(std::uint32_t q, const Residue& a) {
  std::uint64_t code = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) code = code * q + *it;
  return code;
}

Residue residue_of(const FqPoly& f, unsigned k) {
  Residue r(k);
  for (unsigned i = 0; i < k; ++i) r[i] = f[i];
  return r;
}

Residue u_map(std::uint32_t q, const Residue& f) {
  require_odd_prime(q);
  if (f.empty() || f[0] % q == 0) throw DomainError("u_map: f(0) must be nonzero");
  const std::size_t k = f.size();
  const Residue g = residue_mul(q, f, residue_inverse(q, residue_sigma(q, f)));
  const std::uint64_t half = (q + 1) / 2;
  Residue r(k, 0);
  r[0] = 1;
  // Each step doubles the number of correct coefficients.
  for (std::size_t prec = 1; prec < k; prec *= 2) {
    Residue t = residue_mul(q, g, residue_inverse(q, r));
    for (std::size_t i = 0; i < k; ++i) r[i] = static_cast<std::uint32_t>((r[i] + t[i]) % q * half % q);
  }
  if (residue_mul(q, r, r) != g) throw ConsistencyError("u_map: square root check failed");
  return r;
}

Residue u_map(std::uint32_t q, unsigned k, const FqPoly& f) { return u_map(q, residue_of(f, k)); }

std::uint32_t SectorGroup::index_of(const Residue& r) const {
  const std::int64_t i = code_index.at(residue_code(q, r));
  if (i < 0) throw DomainError("residue is not in S^1_k");
  return static_cast<std::uint32_t>(i);
}

SectorGroup sector_group(std::uint32_t q, unsigned k) {
  require_odd_prime(q);
  if (k < 2) throw DomainError("sector_group: k must be >= 2");
  SectorGroup g{q, k, k / 2, {}, {}, 0, 0, 0, {}};
  const std::uint64_t total = ipow(q, k);
  g.code_index.assign(total, -1);
  Residue one(k, 0);
  one[0] = 1;
  // Constant term 1: codes congruent to 1 mod q.
  for (std::uint64_t rest = 0; rest < total / q; ++rest) {
    Residue v(k);
    std::uint64_t x = rest;
    v[0] = 1;
    for (unsigned i = 1; i < k; ++i) {
      v[i] = static_cast<std::uint32_t>(x % q);
      x /= q;
    }
    if (residue_mul(q, v, residue_sigma(q, v)) != one) continue;
    g.code_index[residue_code(q, v)] = static_cast<std::int64_t>(g.elements.size());
    g.elements.push_back(std::move(v));
  }
  if (g.elements.size() != ipow(q, g.kappa))
    throw ConsistencyError("sector_group: |S^1_k| = " + std::to_string(g.elements.size()) +
                           ", expected q^kappa = " + std::to_string(ipow(q, g.kappa)));
  g.identity = g.index_of(one);
  const std::size_t n = g.elements.size();
  g.table.assign(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      g.table[a][b] = g.index_of(residue_mul(q, g.elements[a], g.elements[b]));

  // H_k: units with only even powers of S.
  std::vector<Residue> h;
  for (std::uint64_t code = 0; code < total; ++code) {
    Residue v(k);
    std::uint64_t x = code;
    bool even = true;
    for (unsigned i = 0; i < k; ++i) {
      v[i] = static_cast<std::uint32_t>(x % q);
      x /= q;
      if (i % 2 == 1 && v[i] != 0) even = false;
    }
    if (even && v[0] != 0) h.push_back(std::move(v));
  }
  g.hk_order = h.size();
  const std::uint64_t expect_h = (q - 1) * ipow(q, (k - 1) / 2);
  if (g.hk_order != expect_h)
    throw ConsistencyError("sector_group: |H_k| = " + std::to_string(g.hk_order) + ", expected " +
                           std::to_string(expect_h));
  std::set<std::uint64_t> products;
  for (const auto& a : h)
    for (const auto& b : g.elements) products.insert(residue_code(q, residue_mul(q, a, b)));
  g.product_size = products.size();
  if (g.product_size != g.hk_order * n || g.product_size != (q - 1) * ipow(q, k - 1))
    throw ConsistencyError("sector_group: H_k x S^1_k is not the full unit group");
  return g;
}

bool same_hk_coset(std::uint32_t q, unsigned k, const FqPoly& f, const FqPoly& g) {
  const Residue r = residue_mul(q, residue_of(f, k), residue_inverse(q, residue_of(g, k)));
  for (unsigned i = 1; i < k; i += 2)
    if (r[i] != 0) return false;
  return true;
}

bool Character::trivial() const {
  return std::all_of(phase.begin(), phase.end(), [](std::uint64_t p) { return p == 0; });
}

std::complex<double> Character::operator()(std::uint32_t v) const {
  return std::polar(1.0, 2 * std::numbers::pi * double(phase[v]) / double(denominator));
}

std::vector<Character> super_even_characters(const SectorGroup& g) {
  const std::size_t n = g.order();
  const std::uint64_t Q = n;  // the exponent divides the order
  auto order_of = [&](std::uint32_t x) {
    std::uint64_t e = 1;
    for (std::uint32_t y = x; y != g.identity; y = g.table[y][x]) ++e;
    return e;
  };
  // Extend characters from the subgroup K one cyclic factor at a time.
  std::vector<std::uint32_t> K{g.identity};
  std::vector<char> inK(n, 0);
  inK[g.identity] = 1;
  std::vector<std::vector<std::uint64_t>> chars{std::vector<std::uint64_t>(n, 0)};
  while (K.size() < n) {
    std::uint32_t best = 0;
    std::uint64_t best_order = 0;
    for (std::uint32_t x = 0; x < n; ++x)
      if (!inK[x] && order_of(x) > best_order) {
        best = x;
        best_order = order_of(x);
      }
    std::vector<std::uint32_t> pows{g.identity};
    while (!inK[g.table[pows.back()][best]]) pows.push_back(g.table[pows.back()][best]);
    const std::uint64_t e = pows.size();
    const std::uint32_t ge = g.table[pows.back()][best];
    if (Q % e != 0) throw ConsistencyError("super_even_characters: basis extraction failed");
    std::vector<std::uint32_t> next_K;
    for (std::uint64_t j = 0; j < e; ++j)
      for (std::uint32_t h : K) next_K.push_back(g.table[h][pows[j]]);
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& ch : chars) {
      if (ch[ge] % e != 0) throw ConsistencyError("super_even_characters: root extraction failed");
      for (std::uint64_t t = 0; t < e; ++t) {
        const std::uint64_t w = (ch[ge] / e + t * (Q / e)) % Q;  // phase of g
        std::vector<std::uint64_t> nc(n, 0);
        for (std::uint64_t j = 0; j < e; ++j)
          for (std::uint32_t h : K) nc[g.table[h][pows[j]]] = (ch[h] + j * w) % Q;
        next.push_back(std::move(nc));
      }
    }
    for (std::uint32_t x : next_K) inK[x] = 1;
    K = std::move(next_K);
    chars = std::move(next);
  }
  std::vector<Character> out;
  for (auto& ph : chars) {
    Character c{std::move(ph), Q, 0};
    // Largest d < k with c nontrivial on the elements = 1 mod S^d.
    for (std::uint32_t v = 0; v < n; ++v) {
      if (c.phase[v] == 0) continue;
      unsigned d = 1;
      while (d < g.k && g.elements[v][d] == 0) ++d;
      c.swan = std::max(c.swan, d);
    }
    out.push_back(std::move(c));
  }
  return out;
}

SectorSetup::SectorSetup(std::uint32_t q, unsigned k)
    : group_(sector_group(q, k)), chars_(super_even_characters(group_)) {
  const std::uint64_t total = ipow(q, k);
  sector_of_code_.assign(total, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (code % q == 0) continue;
    Residue r(k);
    std::uint64_t x = code;
    for (unsigned i = 0; i < k; ++i) {
      r[i] = static_cast<std::uint32_t>(x % q);
      x /= q;
    }
    sector_of_code_[code] = group_.index_of(u_map(q, r));
  }
}

std::uint32_t SectorSetup::sector(unsigned n, std::uint64_t idx) const {
  const std::uint64_t qk = ipow(q(), k());
  std::uint64_t code = idx % qk;
  if (n < k()) code += ipow(q(), n);  // the leading 1
  return sector_of_code_[code];
}

}  // namespace secmom::ff
