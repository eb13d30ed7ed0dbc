#include <vector>

#include "secmom/simd/kernels.hpp"

namespace secmom::simd {

void constrained_vandermonde_scalar(const ConstrainedVandermondeShape& shape,
                                    const double* const* coords, std::size_t count,
                                    Accumulator& acc) {
  const std::size_t nleq = shape.leq_lo.size();
  const std::size_t nv = shape.vandermonde.size();
  for (std::size_t s = 0; s < count; ++s) {
    bool ok = true;
    for (std::uint32_t v : shape.unit_bounded) {
      const double x = coords[v][s];
      ok = ok && x >= 0.0 && x <= 1.0;
    }
    for (std::size_t i = 0; i < nleq && ok; ++i)
      ok = coords[shape.leq_lo[i]][s] <= coords[shape.leq_hi[i]][s];
    if (!ok) continue;
    double w = 1.0;
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i + 1; j < nv; ++j)
        w *= coords[shape.vandermonde[i]][s] - coords[shape.vandermonde[j]][s];
    acc.sum += w;
    acc.sum_sq += w * w;
    ++acc.accepted;
  }
}

void power_coefficient_sq_scalar(const double* const* coeffs, unsigned degree, unsigned power,
                                 unsigned target, std::size_t count, double* out) {
  std::vector<double> q(target + 1), next(target + 1);
  for (std::size_t s = 0; s < count; ++s) {
    if (power == 0) {
      out[s] = target == 0 ? 1.0 : 0.0;
      continue;
    }
    for (unsigned t = 0; t <= target; ++t) q[t] = t <= degree ? coeffs[t][s] : 0.0;
    for (unsigned p = 1; p < power; ++p) {
      for (unsigned t = 0; t <= target; ++t) {
        double a = 0.0;
        const unsigned jmax = t < degree ? t : degree;
        for (unsigned j = 0; j <= jmax; ++j) a += coeffs[j][s] * q[t - j];
        next[t] = a;
      }
      q.swap(next);
    }
    out[s] = q[target] * q[target];
  }
}

}  // namespace secmom::simd
