#include <cmath>
#include <random>

#include "doctest.h"
#include "secmom/simd/kernels.hpp"

using namespace secmom::simd;

namespace {

std::vector<std::vector<double>> random_columns(std::size_t vars, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  std::vector<std::vector<double>> cols(vars, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& x : c) x = u(rng);
  return cols;
}

std::vector<const double*> pointers(const std::vector<std::vector<double>>& cols) {
  std::vector<const double*> p;
  for (const auto& c : cols) p.push_back(c.data());
  return p;
}

}  // namespace

TEST_CASE("constrained Vandermonde: scalar and avx2 agree") {
  if (!avx2_available()) return;
  ConstrainedVandermondeShape shape{{0, 2, 3}, {1, 1, 2}, {0, 1, 4}, {1, 2, 3}};
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    const auto cols = random_columns(5, n, static_cast<unsigned>(n) + 1);
    const auto p = pointers(cols);
    Accumulator a, b;
    constrained_vandermonde_scalar(shape, p.data(), n, a);
    constrained_vandermonde_avx2(shape, p.data(), n, b);
    CHECK(a.accepted == b.accepted);
    CHECK(a.sum == doctest::Approx(b.sum).epsilon(1e-12));
    CHECK(a.sum_sq == doctest::Approx(b.sum_sq).epsilon(1e-12));
  }
}

TEST_CASE("constrained Vandermonde scalar reference") {
  ConstrainedVandermondeShape shape{{1}, {0}, {0, 1}, {0, 1}};
  std::vector<std::vector<double>> cols{{0.9, 0.2, 1.5}, {0.4, 0.6, 0.1}};
  const auto p = pointers(cols);
  Accumulator acc;
  constrained_vandermonde_scalar(shape, p.data(), 3, acc);
  CHECK(acc.accepted == 1);
  CHECK(acc.sum == doctest::Approx(0.5));
}

TEST_CASE("power coefficient: scalar and avx2 agree") {
  if (!avx2_available()) return;
  for (unsigned degree : {1u, 3u, 6u})
    for (unsigned power : {1u, 2u, 3u})
      for (std::size_t n : {1u, 4u, 7u, 33u}) {
        const auto cols = random_columns(degree + 1, n, degree * 10 + power);
        const auto p = pointers(cols);
        const unsigned target = degree * power / 2;
        std::vector<double> a(n), b(n);
        power_coefficient_sq_scalar(p.data(), degree, power, target, n, a.data());
        power_coefficient_sq_avx2(p.data(), degree, power, target, n, b.data());
        for (std::size_t s = 0; s < n; ++s) CHECK(a[s] == doctest::Approx(b[s]).epsilon(1e-12));
      }
}

TEST_CASE("power coefficient scalar reference") {
  // (1 + 2x)^3 = 1 + 6x + 12x^2 + 8x^3
  std::vector<std::vector<double>> cols{{1.0}, {2.0}};
  const auto p = pointers(cols);
  double out = 0;
  power_coefficient_sq_scalar(p.data(), 1, 3, 2, 1, &out);
  CHECK(out == doctest::Approx(144.0));
  power_coefficient_sq_scalar(p.data(), 1, 3, 4, 1, &out);
  CHECK(out == 0.0);
  power_coefficient_sq_scalar(p.data(), 1, 0, 0, 1, &out);
  CHECK(out == 1.0);
}

TEST_CASE("dispatcher names") {
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
  CHECK((active_isa() == Isa::scalar || avx2_available()));
}
