#include <cstdlib>
#include <cstring>

#include "secmom/simd/kernels.hpp"

namespace secmom::simd {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("SECMOM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void constrained_vandermonde(const ConstrainedVandermondeShape& shape,
                             const double* const* coords, std::size_t count,
                             Accumulator& acc) {
  if (active_isa() == Isa::avx2) constrained_vandermonde_avx2(shape, coords, count, acc);
  else constrained_vandermonde_scalar(shape, coords, count, acc);
}

void power_coefficient_sq(const double* const* coeffs, unsigned degree, unsigned power,
                          unsigned target, std::size_t count, double* out) {
  if (active_isa() == Isa::avx2) power_coefficient_sq_avx2(coeffs, degree, power, target, count, out);
  else power_coefficient_sq_scalar(coeffs, degree, power, target, count, out);
}

}  // namespace secmom::simd
