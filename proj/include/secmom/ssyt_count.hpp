#pragma once

// Exact tableau-counting engine for the symplectic and orthogonal moment
// integrals. Both integrals expand as Schur sums over restricted shapes,
//
//   Sp(2N):   sum over even lambda with lambda_1 <= 2N of s_lambda,
//   O(2N+1):  2 * sum over mu with even conjugate, mu_1 <= 2N+1, of s_mu,
//
// evaluated at k copies of x and k copies of y. The coefficient of x^m y^n
// counts semistandard tableaux with entries in {1..2k} whose entries <= k
// number m and whose entries > k number n. This is the reference engine the
// other engines are checked against.
//
// The orthogonal group carries total mass 2 throughout (the factor 2 above).

#include <vector>

#include "secmom/ensemble.hpp"
#include "secmom/exact.hpp"
#include "secmom/partition.hpp"

namespace secmom::ssyt {

struct MomentValue {
  Ensemble ensemble;
  unsigned k = 0;
  unsigned n = 0;
  unsigned N = 0;
  Integer value;
};

/// Shapes contributing to the Schur sum at total size `weight`, with at most
/// 2k parts. Sorted in decreasing lexicographic order.
std::vector<Partition> enumerate_shapes(Ensemble ensemble, unsigned k,
                                        unsigned N, unsigned weight);

/// Number of SSYT of `shape` with entries in {1..2k}, m entries <= k and n
/// entries > k. Throws DomainError if m + n != |shape|.
Integer count_ssyt(const Partition& shape, unsigned k, unsigned m, unsigned n);

/// The same count for every split at once: entry m is count_ssyt(shape, k, m,
/// |shape| - m).
std::vector<Integer> content_split_counts(const Partition& shape, unsigned k);

/// I(n; N) = J(n, n; N).
MomentValue I_moment(Ensemble ensemble, unsigned k, unsigned n, unsigned N);

/// Coefficient of x^m y^n in the moment generating function.
Integer J_moment(Ensemble ensemble, unsigned k, unsigned m, unsigned n,
                 unsigned N);

/// The whole table J[m][n] for 0 <= m, n <= top_degree(ensemble, k, N).
std::vector<std::vector<Integer>> J_grid(Ensemble ensemble, unsigned k,
                                         unsigned N);

/// c(mu, 2N) = sum over lambda with lambda_1 <= 2N and mu - lambda a vertical
/// strip of (-1)^|lambda|, via the closed form: zero unless every part below
/// 2N+1 repeats evenly and mu_1 <= 2N+1, otherwise (-1)^(|mu| - t) where t is
/// the multiplicity of 2N+1. The sign reduces to (-1)^|mu| whenever |mu| is
/// even, which is the only case the orthogonal Schur sum uses.
int vertical_strip_coeff(const Partition& mu, unsigned N);

/// The same coefficient by enumerating every 0/1 strip vector.
int vertical_strip_coeff_brute(const Partition& mu, unsigned N);

}  // namespace secmom::ssyt
