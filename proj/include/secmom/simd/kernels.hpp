#pragma once

// Double-precision batch kernels behind the Monte Carlo engines. Each kernel
// has a portable scalar reference and an AVX2/FMA variant; the dispatcher
// picks one at first use. SECMOM_SIMD=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace secmom::simd {

enum class Isa { scalar, avx2 };

/// The variant the dispatcher uses.
Isa active_isa();
std::string_view isa_name(Isa isa);
/// Whether the running CPU supports the AVX2 variants at all.
bool avx2_available();

/// Acceptance test and weight for a batch of points stored column-wise:
/// coords[v][s] is variable v of sample s.
struct ConstrainedVandermondeShape {
  std::vector<std::uint32_t> leq_lo, leq_hi;  ///< x[leq_lo[i]] <= x[leq_hi[i]]
  std::vector<std::uint32_t> unit_bounded;     ///< 0 <= x[v] <= 1
  std::vector<std::uint32_t> vandermonde;      ///< prod_{i<j} (x[v_i] - x[v_j])
};

struct Accumulator {
  double sum = 0;
  double sum_sq = 0;
  std::uint64_t accepted = 0;
};

/// Adds the Vandermonde weight of every accepted sample (zero for rejected
/// ones) to acc.sum, its square to acc.sum_sq, and counts acceptances.
void constrained_vandermonde(const ConstrainedVandermondeShape& shape,
                             const double* const* coords, std::size_t count,
                             Accumulator& acc);
void constrained_vandermonde_scalar(const ConstrainedVandermondeShape& shape,
                                    const double* const* coords, std::size_t count,
                                    Accumulator& acc);
void constrained_vandermonde_avx2(const ConstrainedVandermondeShape& shape,
                                  const double* const* coords, std::size_t count,
                                  Accumulator& acc);

/// out[s] = (coefficient of x^target in p_s(x)^power)^2 where
/// p_s(x) = sum_j coeffs[j][s] x^j, j = 0..degree.
void power_coefficient_sq(const double* const* coeffs, unsigned degree, unsigned power,
                          unsigned target, std::size_t count, double* out);
void power_coefficient_sq_scalar(const double* const* coeffs, unsigned degree, unsigned power,
                                 unsigned target, std::size_t count, double* out);
void power_coefficient_sq_avx2(const double* const* coeffs, unsigned degree, unsigned power,
                               unsigned target, std::size_t count, double* out);

}  // namespace secmom::simd
