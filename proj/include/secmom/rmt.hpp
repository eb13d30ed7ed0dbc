#pragma once

// Haar sampling on O(dim) and USp(2N), secular coefficients and Monte Carlo
// estimates of the moment integrals.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "secmom/ensemble.hpp"
#include "secmom/rng.hpp"

namespace secmom::rmt {

struct HaarSample {
  Ensemble ensemble;
  unsigned dim;
  Eigen::MatrixXcd matrix;
  int det_sign = 1;  ///< component of O(dim); always 1 for USp
};

/// QR of a real Gaussian matrix with the diagonal sign fix. Throws DomainError
/// for dim = 0, NumericalError if two draws in a row are singular.
HaarSample sample_orthogonal(unsigned dim, Rng& rng);

/// Quaternionic Gram-Schmidt in the complex picture: column i is a Gaussian
/// vector orthogonalised against the previous quaternionic lines, column N+i
/// is -J conj(column i), so that U^T J U = J with J = [[0, I], [-I, 0]].
HaarSample sample_symplectic(unsigned N, Rng& rng);

/// The skew form of size 2N.
Eigen::MatrixXcd standard_form(unsigned N);

/// max |(U*U - I)_ij|.
double unitarity_error(const Eigen::MatrixXcd& u);
/// max |(U^T J U - J)_ij|.
double symplectic_form_error(const Eigen::MatrixXcd& u);

/// Eigenvalue phases in (-pi, pi], sorted.
std::vector<double> eigenphases(const HaarSample& s);

/// Sc_0..Sc_dim of det(I + Ux), by multiplying out prod (1 + lambda_i x).
/// Throws NumericalError if an imaginary part exceeds 1e-8.
std::vector<double> secular_coeffs(const HaarSample& s);
/// Same coefficients from the Faddeev-LeVerrier recurrence on the matrix.
std::vector<double> secular_coeffs_leverrier(const HaarSample& s);

/// sum over j_1 + ... + j_k = n, 0 <= j_i <= dim, of prod Sc_{j_i}, summed
/// directly over compositions.
double composition_sum(const std::vector<double>& sc, unsigned k, unsigned n);

/// Mean of |composition_sum|^2 over Haar samples (times 2 for O(2N+1)), split
/// over `streams` seeded streams.
Estimate estimate_I(Ensemble ensemble, unsigned k, unsigned n, unsigned N,
                    std::uint64_t samples, std::uint64_t seed, unsigned streams = 1);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Critical value at level 1% for sample sizes n and m (asymptotic).
double ks_critical_1pct(std::size_t n, std::size_t m);

}  // namespace secmom::rmt
