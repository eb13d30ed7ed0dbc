#pragma once

// Lattice-point model of the moment integrals. A tableau is recorded by the
// Gelfand-Tsetlin array y_r^(s) (number of entries <= s in row r), columns
// s = 1..C with C = 2k (Sp) or 2k-1 (O). Entries lie in [0, D], consecutive
// columns interlace, and two cells are fixed by the content constraints:
//
//   Sp:  sum_r y_r^(k) = n,  sum_r y_r^(2k) = 2n, y_r^(2k) even;
//   O:   sum_r y_r^(k) = n,  sum_{r odd} y_r^(2k-1) = n.
//
// With c = n / D the array is a lattice point of the dilate D * V_c, where V_c
// keeps every cell except (1,k) and (1,C) as a free coordinate.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "secmom/ensemble.hpp"
#include "secmom/error.hpp"
#include "secmom/exact.hpp"
#include "secmom/quasi_polynomial.hpp"
#include "secmom/rng.hpp"

namespace secmom::ehrhart {

/// Affine form sum_i coeffs[i] * u_i + constant >= 0 over the free
/// coordinates (constant already contains c).
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational constant;
};

struct PolytopeModel {
  Ensemble ensemble;
  unsigned k;
  Rational c;
  std::vector<std::pair<unsigned, unsigned>> coords;  ///< free cells (row, column)
  std::vector<bool> even;                             ///< even lattice in the Sp dilate
  std::vector<LinearInequality> inequalities;

  /// Throws DomainError unless 0 <= c <= k and k >= 1.
  static PolytopeModel build(Ensemble ensemble, unsigned k, const Rational& c);

  std::size_t dimension() const { return coords.size(); }
  /// Whether u lies in V_c.
  bool contains(const std::vector<Rational>& u) const;
  /// Whether the integer point x lies in dilate * V_c (lattice parity not checked).
  bool contains_dilated(const std::vector<long>& x, long dilate) const;
};

/// Number of lattice points in dilate * V_c: equals I^S(c dilate; dilate/2) for
/// Sp and I^O(c dilate; (dilate-1)/2) / 2 for O. Sums over the middle column
/// of (patterns below) x (patterns above), the top column by
/// inclusion-exclusion. Throws DomainError if c * dilate is not an integer or
/// dilate has the wrong parity.
Integer lattice_count(const PolytopeModel& model, unsigned dilate);

/// Direct enumeration of the box [0, dilate]^dim against the inequality list.
Integer lattice_count_bruteforce(const PolytopeModel& model, unsigned dilate);

/// Raised when held-out samples are not reproduced by the interpolant.
class FitFailure : public ConsistencyError {
 public:
  FitFailure(long point, Rational residual);
  long point() const { return point_; }
  const Rational& residual() const { return residual_; }

 private:
  long point_;
  Rational residual_;
};

struct Fit {
  QuasiPolynomial poly;
  std::vector<bool> fitted;  ///< residue classes that had samples
  unsigned degree;
};

/// Exact interpolation of degree `degree` in each residue class mod `period`
/// that has samples, using the d+1 smallest points and checking the rest.
/// Classes with samples need at least d+2 of them (DomainError otherwise).
Fit fit_quasi_polynomial(std::vector<std::pair<long, Rational>> samples, unsigned degree,
                         unsigned period, std::string var = "n");

/// The degree of the moment in the matrix size: 2k^2+k-2 (Sp), 2k^2-k-2 (O).
unsigned moment_degree(Ensemble ensemble, unsigned k);

/// Leading coefficient in the variable (2N) for Sp (fit in N, divided by
/// 2^d) or (2N+1) for O (fit directly in M = 2N+1). Throws ConsistencyError if
/// fitted classes disagree in the leading coefficient or the fit degree is
/// not moment_degree.
Rational gamma_from_fit(Ensemble ensemble, unsigned k, const Fit& fit);

struct GammaSamples {
  std::vector<std::pair<long, Rational>> points;  ///< (N or M, moment value)
  unsigned period;
  std::string var;
};

/// Moment values along c * size from lattice counts, for `count` admissible
/// sizes per residue class starting at the smallest admissible size >= min_size.
GammaSamples gamma_samples(Ensemble ensemble, unsigned k, const Rational& c, unsigned count,
                           unsigned min_size);

struct McResult {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  bool degenerate = false;  ///< no sample accepted
};

/// uniform: every free cell uniform in [0,1], resolved cells checked, the
/// Vandermonde of column k averaged with rejected samples counted as 0.
/// sequential: the top column drawn as sorted uniforms, each lower cell
/// uniform on its interlacing interval, weighted by the interval lengths.
/// Both estimate the same integral; sequential wastes far fewer samples when
/// the accepted region is a small fraction of the cube.
enum class McSampler { uniform, sequential };

McSampler parse_sampler(std::string_view name);
std::string_view sampler_name(McSampler s);

/// Monte Carlo value of the gamma integral over the reduced triangle
/// (columns k..C), splitting `samples` over `streams` seeded streams.
/// Prefactor 2^(1-2k)/G(1+k) (Sp) or 2/G(1+k) (O). Throws DomainError unless
/// 0 < c < k, UnsupportedError for O with k = 1 (no free cells).
McResult gamma_mc_integral(Ensemble ensemble, unsigned k, double c, std::uint64_t samples,
                           std::uint64_t seed, unsigned streams = 1,
                           McSampler sampler = McSampler::uniform);

}  // namespace secmom::ehrhart
