#pragma once

// Arithmetic over F_q[S] for prime q: monic enumeration, divisor functions,
// the quadratic character, the group S^1_k of norm-one units mod S^k with its
// characters, L-polynomials and the sector / quadratic-residue variances.
//
// Monic polynomials of degree n are indexed by their lower coefficients read
// as base-q digits: idx = c_0 + c_1 q + ... + c_{n-1} q^(n-1).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "secmom/exact.hpp"

namespace secmom::ff {

bool is_prime(std::uint64_t n);
/// Throws UnsupportedError unless q is an odd prime.
void require_odd_prime(std::uint64_t q);
std::uint64_t ipow(std::uint64_t q, unsigned n);

class FqPoly {
 public:
  FqPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs = {});
  static FqPoly monomial(std::uint32_t p, unsigned degree, std::uint32_t c = 1);
  /// The monic polynomial of degree n with index idx.
  static FqPoly monic(std::uint32_t p, unsigned n, std::uint64_t idx);

  std::uint32_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  std::uint32_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  /// Index among monics of its degree; DomainError if not monic.
  std::uint64_t monic_index() const;
  std::uint32_t eval(std::uint32_t x) const;

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  /// Remainder; DomainError on division by zero.
  FqPoly operator%(const FqPoly& m) const;
  FqPoly quotient(const FqPoly& m) const;
  bool operator==(const FqPoly& o) const = default;

  FqPoly powmod(std::uint64_t e, const FqPoly& m) const;
  FqPoly make_monic() const;
  std::string to_string(char var = 'T') const;

 private:
  void trim();
  void divmod(const FqPoly& m, FqPoly* q, FqPoly* r) const;
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

FqPoly gcd(FqPoly a, FqPoly b);
/// Rabin's test.
bool is_irreducible(const FqPoly& f);
/// Legendre symbol of a mod q via Euler's criterion.
int legendre(std::uint32_t q, std::uint64_t a);
/// chi_2(f) = legendre(f(0)); UnsupportedError for even q.
int chi2(std::uint32_t q, const FqPoly& f);

/// d_l(f) for every monic f with deg f <= n_max.
class DivisorTable {
 public:
  DivisorTable(std::uint32_t q, unsigned l, unsigned n_max);
  std::uint32_t q() const { return q_; }
  unsigned l() const { return l_; }
  unsigned n_max() const { return n_max_; }
  std::uint64_t at(unsigned n, std::uint64_t idx) const { return t_.at(n).at(idx); }
  std::uint64_t operator()(const FqPoly& f) const;

 private:
  std::uint32_t q_;
  unsigned l_, n_max_;
  std::vector<std::vector<std::uint64_t>> t_;
};

/// sum over monic f of degree n with f(0) != 0 of d_l(f) chi_2(f).
long long chi2_weighted_sum(std::uint32_t q, unsigned l, unsigned n);

/// Residues mod S^k as coefficient vectors of length k.
using Residue = std::vector<std::uint32_t>;
Residue residue_mul(std::uint32_t q, const Residue& a, const Residue& b);
Residue residue_inverse(std::uint32_t q, const Residue& a);
/// sigma(S) = -S.
Residue residue_sigma(std::uint32_t q, const Residue& a);
std::uint64_t residue_code(std::uint32_t q, const Residue& a);
Residue residue_of(const FqPoly& f, unsigned k);

/// sqrt(f / sigma(f)) mod S^k with constant term 1, by Newton iteration.
/// DomainError if f(0) = 0.
Residue u_map(std::uint32_t q, unsigned k, const FqPoly& f);
Residue u_map(std::uint32_t q, const Residue& f);

struct SectorGroup {
  std::uint32_t q;
  unsigned k, kappa;
  std::vector<Residue> elements;
  std::vector<std::vector<std::uint32_t>> table;  ///< multiplication by index
  std::uint32_t identity;
  std::uint64_t hk_order;
  std::uint64_t product_size;  ///< |H_k S^1_k| counted as residues

  std::size_t order() const { return elements.size(); }
  /// Index of a residue in S^1_k; DomainError if absent.
  std::uint32_t index_of(const Residue& r) const;
  std::uint32_t locate(const FqPoly& f) const { return index_of(u_map(q, k, f)); }

  std::vector<std::int64_t> code_index;  ///< residue code -> element, -1 if absent
};

/// Builds S^1_k and H_k and checks |S^1_k| = q^kappa, |H_k| =
/// (q-1) q^floor((k-1)/2) and that H_k S^1_k is all units (ConsistencyError).
SectorGroup sector_group(std::uint32_t q, unsigned k);

/// Whether f and g lie in the same coset of H_k in the units mod S^k.
bool same_hk_coset(std::uint32_t q, unsigned k, const FqPoly& f, const FqPoly& g);

/// Character values exp(2 pi i phase[v] / denominator).
struct Character {
  std::vector<std::uint64_t> phase;
  std::uint64_t denominator;
  unsigned swan = 0;  ///< 0 for the trivial character
  bool trivial() const;
  std::complex<double> operator()(std::uint32_t v) const;
};

/// All q^kappa characters, the trivial one first.
std::vector<Character> super_even_characters(const SectorGroup& g);

/// Group, characters and the sector of every residue with nonzero constant term.
class SectorSetup {
 public:
  SectorSetup(std::uint32_t q, unsigned k);
  const SectorGroup& group() const { return group_; }
  const std::vector<Character>& characters() const { return chars_; }
  std::uint32_t q() const { return group_.q; }
  unsigned k() const { return group_.k; }
  /// Sector index of the monic of degree n with index idx (f(0) != 0).
  std::uint32_t sector(unsigned n, std::uint64_t idx) const;

 private:
  SectorGroup group_;
  std::vector<Character> chars_;
  std::vector<std::uint32_t> sector_of_code_;
};

/// sum over monic f of degree n, f(0) != 0, of d_l(f) Xi(f) (chi_2(f) if twist).
std::complex<double> m0_sum(const SectorSetup& s, const DivisorTable& d, unsigned n,
                            const Character& xi, bool twist);

struct LPolynomial {
  std::vector<std::complex<double>> coeffs;  ///< c_0..c_{k+2}
  unsigned degree;
  std::vector<std::complex<double>> roots;
};

/// c_n = sum over monic f of degree n, f(0) != 0, of Xi(f) (chi_2(f) if twist),
/// n = 0..k+2. With check set and Xi nontrivial, throws ConsistencyError
/// unless the degree is swan(Xi) and every root has modulus q^(-1/2).
LPolynomial l_polynomial(const SectorSetup& s, const Character& xi, bool twist,
                         bool check = true);

/// u^n coefficient of L(u)^l.
std::complex<double> power_coefficient(const std::vector<std::complex<double>>& c, unsigned l,
                                       unsigned n);

struct SectorVariance {
  double variance;       ///< over v in S^1_k of the weighted sector counts
  double identity_rhs;   ///< (1/4q^(2 kappa)) sum_{Xi != 1} |M0(Xi) + M0(Xi chi_2)|^2
  double mean;
  double mean_formula;   ///< (1/q^kappa) sum_f d_l(f)(1 + chi_2(f))/2
};

SectorVariance sector_variance(const SectorSetup& s, const DivisorTable& d, unsigned n);
SectorVariance sector_variance(std::uint32_t q, unsigned k, unsigned l, unsigned n);

/// Monic irreducibles of degree d.
std::vector<FqPoly> irreducibles(std::uint32_t q, unsigned d);

/// Mean over monic irreducible P of degree 2g+1 of
/// (sum_{f in M_n, QR mod P} d_k(f) - (1/2) sum_{f in M_n, P does not divide f} d_k(f))^2.
double qr_variance(std::uint32_t q, unsigned g, unsigned k, unsigned n);

struct CompareRow {
  std::uint32_t q;
  double empirical;
  double predicted;
  double ratio;
  double identity_ratio;  ///< empirical / identity_rhs (sectors); 1 for qr
};

/// Sector variance against q^n/(4 q^kappa) I^O_{d_l,2}(n; kappa-1).
std::vector<CompareRow> compare_sectors(const std::vector<std::uint32_t>& qs, unsigned k,
                                        unsigned l, unsigned n);
/// qr_variance against (q^n/4) I^S_{d_k,2}(n; g).
std::vector<CompareRow> compare_qr(const std::vector<std::uint32_t>& qs, unsigned g, unsigned k,
                                   unsigned n);

}  // namespace secmom::ff
