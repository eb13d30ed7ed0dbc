// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#pragma GCC diagnostic ignored "-Wignored-attributes"

#include <immintrin.h>

#include <algorithm>
#include <vector>

#include "secmom/simd/kernels.hpp"

namespace secmom::simd {

void constrained_vandermonde_avx2(const ConstrainedVandermondeShape& shape,
                                  const double* const* coords, std::size_t count,
                                  Accumulator& acc) {
  const std::size_t nleq = shape.leq_lo.size();
  const std::size_t nv = shape.vandermonde.size();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d vsum = zero, vsq = zero;
  std::uint64_t accepted = 0;
  std::size_t s = 0;
  for (; s + 4 <= count; s += 4) {
    __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::uint32_t v : shape.unit_bounded) {
      const __m256d x = _mm256_loadu_pd(coords[v] + s);
      mask = _mm256_and_pd(mask, _mm256_cmp_pd(x, zero, _CMP_GE_OQ));
      mask = _mm256_and_pd(mask, _mm256_cmp_pd(x, one, _CMP_LE_OQ));
    }
    for (std::size_t i = 0; i < nleq; ++i) {
      const __m256d lo = _mm256_loadu_pd(coords[shape.leq_lo[i]] + s);
      const __m256d hi = _mm256_loadu_pd(coords[shape.leq_hi[i]] + s);
      mask = _mm256_and_pd(mask, _mm256_cmp_pd(lo, hi, _CMP_LE_OQ));
    }
    const int bits = _mm256_movemask_pd(mask);
    if (bits == 0) continue;
    __m256d w = one;
    for (std::size_t i = 0; i < nv; ++i) {
      const __m256d xi = _mm256_loadu_pd(coords[shape.vandermonde[i]] + s);
      for (std::size_t j = i + 1; j < nv; ++j)
        w = _mm256_mul_pd(w, _mm256_sub_pd(xi, _mm256_loadu_pd(coords[shape.vandermonde[j]] + s)));
    }
    w = _mm256_and_pd(w, mask);
    vsum = _mm256_add_pd(vsum, w);
    vsq = _mm256_fmadd_pd(w, w, vsq);
    accepted += static_cast<std::uint64_t>(__builtin_popcount(bits));
  }
  alignas(32) double a[4], b[4];
  _mm256_store_pd(a, vsum);
  _mm256_store_pd(b, vsq);
  acc.sum += (a[0] + a[1]) + (a[2] + a[3]);
  acc.sum_sq += (b[0] + b[1]) + (b[2] + b[3]);
  acc.accepted += accepted;
  if (s < count) {
    std::vector<const double*> tail;
    // Remaining lanes through the reference path on shifted pointers.
    std::size_t nvars = 0;
    for (std::uint32_t v : shape.unit_bounded) nvars = std::max<std::size_t>(nvars, v + 1);
    for (std::uint32_t v : shape.leq_lo) nvars = std::max<std::size_t>(nvars, v + 1);
    for (std::uint32_t v : shape.leq_hi) nvars = std::max<std::size_t>(nvars, v + 1);
    for (std::uint32_t v : shape.vandermonde) nvars = std::max<std::size_t>(nvars, v + 1);
    tail.resize(nvars);
    for (std::size_t v = 0; v < nvars; ++v) tail[v] = coords[v] + s;
    constrained_vandermonde_scalar(shape, tail.data(), count - s, acc);
  }
}

void power_coefficient_sq_avx2(const double* const* coeffs, unsigned degree, unsigned power,
                               unsigned target, std::size_t count, double* out) {
  if (power == 0) {
    power_coefficient_sq_scalar(coeffs, degree, power, target, count, out);
    return;
  }
  std::vector<__m256d> q(target + 1), next(target + 1), c(degree + 1);
  std::size_t s = 0;
  for (; s + 4 <= count; s += 4) {
    for (unsigned j = 0; j <= degree; ++j) c[j] = _mm256_loadu_pd(coeffs[j] + s);
    for (unsigned t = 0; t <= target; ++t) q[t] = t <= degree ? c[t] : _mm256_setzero_pd();
    for (unsigned p = 1; p < power; ++p) {
      for (unsigned t = 0; t <= target; ++t) {
        __m256d a = _mm256_setzero_pd();
        const unsigned jmax = t < degree ? t : degree;
        for (unsigned j = 0; j <= jmax; ++j) a = _mm256_fmadd_pd(c[j], q[t - j], a);
        next[t] = a;
      }
      q.swap(next);
    }
    _mm256_storeu_pd(out + s, _mm256_mul_pd(q[target], q[target]));
  }
  if (s < count) {
    std::vector<const double*> tail(degree + 1);
    for (unsigned j = 0; j <= degree; ++j) tail[j] = coeffs[j] + s;
    power_coefficient_sq_scalar(tail.data(), degree, power, target, count - s, out + s);
  }
}

}  // namespace secmom::simd
