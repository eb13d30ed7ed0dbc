#include <Eigen/Dense>
#include <cmath>

#include "secmom/error.hpp"
#include "secmom/funcfield.hpp"
#include "secmom/ssyt_count.hpp"

namespace secmom::ff {

namespace {

std::uint32_t constant_term(std::uint32_t q, unsigned n, std::uint64_t idx) {
  return n == 0 ? 1 : static_cast<std::uint32_t>(idx % q);
}

}  // namespace

std::complex<double> m0_sum(const SectorSetup& s, const DivisorTable& d, unsigned n,
                            const Character& xi, bool twist) {
  const std::uint32_t q = s.q();
  std::complex<double> total = 0;
  const std::uint64_t count = ipow(q, n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const std::uint32_t c0 = constant_term(q, n, idx);
    if (c0 == 0) continue;
    std::complex<double> v = xi(s.sector(n, idx)) * double(d.at(n, idx));
    if (twist) v *= double(legendre(q, c0));
    total += v;
  }
  return total;
}

std::complex<double> power_coefficient(const std::vector<std::complex<double>>& c, unsigned l,
                                       unsigned n) {
  std::vector<std::complex<double>> acc(n + 1, 0.0);
  acc[0] = 1;
  for (unsigned step = 0; step < l; ++step) {
    std::vector<std::complex<double>> next(n + 1, 0.0);
    for (unsigned t = 0; t <= n; ++t)
      for (unsigned j = 0; j <= t && j < c.size(); ++j) next[t] += c[j] * acc[t - j];
    acc.swap(next);
  }
  return acc[n];
}

LPolynomial l_polynomial(const SectorSetup& s, const Character& xi, bool twist, bool check) {
  const std::uint32_t q = s.q();
  const unsigned top = s.k() + 2;
  const DivisorTable ones(q, 1, top);
  LPolynomial L;
  for (unsigned n = 0; n <= top; ++n) L.coeffs.push_back(m0_sum(s, ones, n, xi, twist));
  L.degree = 0;
  for (unsigned n = 0; n <= top; ++n)
    if (std::abs(L.coeffs[n]) > 1e-8) L.degree = n;
  if (L.degree > 0) {
    // Roots of c_0 + c_1 u + ... + c_d u^d from the companion matrix.
    const unsigned d = L.degree;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (unsigned i = 1; i < d; ++i) comp(i, i - 1) = 1;
    for (unsigned i = 0; i < d; ++i) comp(i, d - 1) = -L.coeffs[i] / L.coeffs[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) L.roots.push_back(solver.eigenvalues()(i));
  }
  if (check && !xi.trivial()) {
    if (std::abs(L.coeffs[0] - 1.0) > 1e-8) throw ConsistencyError("l_polynomial: c_0 != 1");
    if (L.degree != xi.swan)
      throw ConsistencyError("l_polynomial: degree " + std::to_string(L.degree) +
                             " but the Swan conductor is " + std::to_string(xi.swan));
    const double target = 1 / std::sqrt(double(q));
    for (const auto& r : L.roots)
      if (std::abs(std::abs(r) - target) > 1e-6)
        throw ConsistencyError("l_polynomial: root of modulus " + std::to_string(std::abs(r)));
  }
  return L;
}

SectorVariance sector_variance(const SectorSetup& s, const DivisorTable& d, unsigned n) {
  const std::uint32_t q = s.q();
  const std::size_t G = s.group().order();
  std::vector<double> counts(G, 0.0);
  double weight_total = 0;
  const std::uint64_t count = ipow(q, n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const std::uint32_t c0 = constant_term(q, n, idx);
    if (c0 == 0) continue;
    const double w = double(d.at(n, idx)) * (1 + legendre(q, c0)) / 2.0;
    counts[s.sector(n, idx)] += w;
    weight_total += w;
  }
  SectorVariance out{};
  for (double c : counts) out.mean += c;
  out.mean /= double(G);
  for (double c : counts) out.variance += (c - out.mean) * (c - out.mean);
  out.variance /= double(G);
  out.mean_formula = weight_total / double(G);
  double rhs = 0;
  for (const auto& xi : s.characters()) {
    if (xi.trivial()) continue;
    rhs += std::norm(m0_sum(s, d, n, xi, false) + m0_sum(s, d, n, xi, true));
  }
  out.identity_rhs = rhs / (4.0 * double(G) * double(G));
  return out;
}

SectorVariance sector_variance(std::uint32_t q, unsigned k, unsigned l, unsigned n) {
  const SectorSetup s(q, k);
  return sector_variance(s, DivisorTable(q, l, n), n);
}

double qr_variance(std::uint32_t q, unsigned g, unsigned k, unsigned n) {
  require_odd_prime(q);
  if (g == 0) throw DomainError("qr_variance: g must be >= 1");
  if (k == 0) throw DomainError("qr_variance: k must be >= 1");
  const unsigned deg = 2 * g + 1;
  const DivisorTable d(q, k, n);
  const auto primes = irreducibles(q, deg);
  const std::uint64_t euler = (ipow(q, deg) - 1) / 2;
  const std::uint64_t count = ipow(q, n);
  std::vector<FqPoly> fs;
  for (std::uint64_t idx = 0; idx < count; ++idx) fs.push_back(FqPoly::monic(q, n, idx));
  double total = 0;
  for (const auto& P : primes) {
    double s = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const FqPoly r = fs[idx] % P;
      if (r.is_zero()) continue;
      const FqPoly t = r.powmod(euler, P);
      const int chi = t == FqPoly(q, {1}) ? 1 : -1;
      s += 0.5 * chi * double(d.at(n, idx));
    }
    total += s * s;
  }
  return total / double(primes.size());
}

std::vector<CompareRow> compare_sectors(const std::vector<std::uint32_t>& qs, unsigned k,
                                        unsigned l, unsigned n) {
  if (k < 2) throw DomainError("compare_sectors: k must be >= 2");
  const unsigned kappa = k / 2;
  const double moment =
      ssyt::I_moment(Ensemble::orthogonal, l, n, kappa - 1).value.get_d();
  std::vector<CompareRow> rows;
  for (std::uint32_t q : qs) {
    const SectorVariance v = sector_variance(q, k, l, n);
    const double predicted = double(ipow(q, n)) / (4.0 * double(ipow(q, kappa))) * moment;
    const double identity = v.identity_rhs == 0 ? (v.variance == 0 ? 1.0 : 0.0) : v.variance / v.identity_rhs;
    rows.push_back({q, v.variance, predicted, v.variance / predicted, identity});
  }
  return rows;
}

std::vector<CompareRow> compare_qr(const std::vector<std::uint32_t>& qs, unsigned g, unsigned k,
                                   unsigned n) {
  const double moment = ssyt::I_moment(Ensemble::symplectic, k, n, g).value.get_d();
  std::vector<CompareRow> rows;
  for (std::uint32_t q : qs) {
    const double v = qr_variance(q, g, k, n);
    const double predicted = double(ipow(q, n)) / 4.0 * moment;
    rows.push_back({q, v, predicted, v / predicted, 1.0});
  }
  return rows;
}

}  // namespace secmom::ff
