#pragma once

#include <optional>
#include <string>

#include "secmom/ensemble.hpp"
#include "secmom/exact.hpp"
#include "secmom/quasi_polynomial.hpp"

namespace secmom::closedform {

// For n <= N only the lower-triangular part of the determinant contributes
// and the moment collapses to a single binomial sum,
//
//   I(n) = p * sum_{l = n mod 2} C((n-l)/2 + a - 1, a - 1)^2 C(l + k^2 - 1, k^2 - 1),
//
// with a = C(k+1, 2), p = 1 for Sp(2N) and a = C(k, 2), p = 2 for O(2N+1).

/// The binomial sum without any range check.
Integer closed_sum(Ensemble ensemble, unsigned k, unsigned n);

/// Throws RangeError for n > N.
Integer I_sym_closed(unsigned k, unsigned n, unsigned N);
/// Throws DomainError for k < 2 and RangeError for n > N.
Integer I_orth_closed(unsigned k, unsigned n, unsigned N);

/// I at the mirrored index top_degree - n, evaluated through `evaluate`.
Integer reflect(Ensemble ensemble, unsigned k, unsigned n, unsigned N);

struct Evaluation {
  Integer value;
  std::string engine;  ///< "closed", "closed-reflected" or "ssyt"
};

/// Closed form when n <= N, closed form at the mirrored index when that lies
/// in range, tableau counting otherwise.
Evaluation evaluate(Ensemble ensemble, unsigned k, unsigned n, unsigned N);

/// Largest n0 such that closed_sum agrees with tableau counting for every
/// n <= n0 (capped at top_degree).
unsigned validity_boundary(Ensemble ensemble, unsigned k, unsigned N);

/// k = 1 symplectic: floor((n+2)/2) for n <= N, floor((2N-n+2)/2) above.
Integer sym_k1_two_branch(unsigned n, unsigned N);

/// The closed degree-8 quasi-polynomial for Sp, k = 2, valid for n <= N.
Rational sym_k2_display(long n);
/// The closed degree-4 quasi-polynomial for O, k = 2, valid for n <= N.
Rational orth_k2_display(long n);
/// Its floor form 2 * floor(((n+3)^2 - 1)((n+3)^2 - 3) / 48).
Integer orth_k2_floor_display(long n);

/// The closed forms as explicit quasi-polynomials of period 2 in n.
QuasiPolynomial sym_k2_quasi();
QuasiPolynomial orth_k2_quasi();

/// The known gamma pieces. nullopt outside the known intervals (and for
/// the orthogonal k = 1 case, which has none). UnsupportedError for k > 2.
std::optional<Rational> gamma_piece(Ensemble ensemble, unsigned k, const Rational& c);

}  // namespace secmom::closedform
