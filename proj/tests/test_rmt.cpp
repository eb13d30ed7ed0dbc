#include <cmath>
#include <complex>

#include "doctest.h"
#include "secmom/closedform.hpp"
#include "secmom/error.hpp"
#include "secmom/rmt.hpp"
#include "secmom/ssyt_count.hpp"

using namespace secmom;
using namespace secmom::rmt;

namespace {

HaarSample from_diagonal(std::vector<std::complex<double>> d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HaarSample{Ensemble::orthogonal, static_cast<unsigned>(d.size()), m, 1};
}

double trace_sq_mean(Ensemble e, unsigned dim, unsigned draws, std::uint64_t seed, double& se) {
  Rng rng(seed);
  double s = 0, s2 = 0;
  for (unsigned i = 0; i < draws; ++i) {
    const auto h = e == Ensemble::orthogonal ? sample_orthogonal(dim, rng)
                                             : sample_symplectic(dim / 2, rng);
    const double t = h.matrix.trace().real();
    s += t * t;
    s2 += t * t * t * t;
  }
  const double mean = s / draws;
  se = std::sqrt((s2 / draws - mean * mean) / (draws - 1));
  return mean;
}

}  // namespace

TEST_CASE("secular coefficients of fixed matrices") {
  using C = std::complex<double>;
  CHECK(secular_coeffs(from_diagonal({1, 1, 1})) == std::vector<double>{1, 3, 3, 1});
  CHECK(secular_coeffs(from_diagonal({-1, -1, -1})) == std::vector<double>{1, -3, 3, -1});
  const auto d = secular_coeffs(from_diagonal({C(0, 1), C(0, -1)}));
  CHECK(d[0] == 1);
  CHECK(d[1] == doctest::Approx(0));
  CHECK(d[2] == doctest::Approx(1));
  CHECK_THROWS_AS(secular_coeffs(from_diagonal({C(0, 1)})), NumericalError);
}

TEST_CASE("orthogonal samples") {
  Rng rng(1);
  for (unsigned dim : {1u, 3u, 5u, 8u}) {
    const auto s = sample_orthogonal(dim, rng);
    CHECK(unitarity_error(s.matrix) < 1e-10);
    CHECK(s.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
    for (unsigned j = 0; j < dim; ++j) CHECK(std::abs(s.matrix.col(j).norm() - 1) < 1e-10);
  }
  CHECK_THROWS_AS(sample_orthogonal(0, rng), DomainError);
}

TEST_CASE("symplectic samples") {
  Rng rng(2);
  for (unsigned N : {1u, 2u, 3u, 6u}) {
    const auto s = sample_symplectic(N, rng);
    CHECK(unitarity_error(s.matrix) < 1e-10);
    CHECK(symplectic_form_error(s.matrix) < 1e-8);
    const auto ph = eigenphases(s);
    for (std::size_t i = 0; i < ph.size(); ++i) CHECK(std::abs(ph[i] + ph[ph.size() - 1 - i]) < 1e-8);
  }
  CHECK_THROWS_AS(sample_symplectic(0, rng), DomainError);
}

TEST_CASE("secular coefficients: eigenvalues and Faddeev-LeVerrier agree") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto s = i % 2 ? sample_orthogonal(7, rng) : sample_symplectic(3, rng);
    const auto a = secular_coeffs(s);
    const auto b = secular_coeffs_leverrier(s);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) < 1e-8);
    // det(I + Ux) = x^dim det(I + U^-1 x) up to det U
    const double det = s.matrix.determinant().real();
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - det * a[a.size() - 1 - j]) < 1e-8);
  }
}

TEST_CASE("composition sum equals the power coefficient") {
  Rng rng(4);
  const auto s = sample_symplectic(3, rng);
  const auto sc = secular_coeffs(s);
  // (sum_j Sc_j x^j)^2 coefficient of x^4
  double direct = 0;
  for (unsigned a = 0; a <= 4; ++a) direct += sc[a] * sc[4 - a];
  CHECK(composition_sum(sc, 2, 4) == doctest::Approx(direct));
  CHECK(composition_sum(sc, 1, 3) == doctest::Approx(sc[3]));
}

TEST_CASE("second moment of the trace") {
  double se = 0;
  double m = trace_sq_mean(Ensemble::orthogonal, 5, 10000, 5, se);
  CHECK(std::abs(m - 1) < 4 * se);
  m = trace_sq_mean(Ensemble::symplectic, 6, 10000, 6, se);
  CHECK(std::abs(m - 1) < 4 * se);
}

TEST_CASE("determinant of O(3) draws has mean 0") {
  Rng rng(7);
  double s = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) s += sample_orthogonal(3, rng).det_sign;
  CHECK(std::abs(s / n) < 4 / std::sqrt(double(n)));
}

TEST_CASE("estimate_I example cases") {
  const auto a = estimate_I(Ensemble::symplectic, 1, 2, 3, 10000, 11);
  CHECK(std::abs(a.mean - 2) < 4 * a.stderr_);
  const auto b = estimate_I(Ensemble::orthogonal, 1, 1, 1, 10000, 12);
  CHECK(std::abs(b.mean - 2) < 4 * b.stderr_);
  const auto c = estimate_I(Ensemble::orthogonal, 2, 1, 2, 10000, 13);
  CHECK(std::abs(c.mean - 8) < 4 * c.stderr_);
  CHECK(closedform::I_orth_closed(2, 1, 2) == 8);
}

TEST_CASE("estimate_I against tableau counts") {
  const auto s = estimate_I(Ensemble::symplectic, 2, 3, 2, 20000, 21, 4);
  const double exact = ssyt::I_moment(Ensemble::symplectic, 2, 3, 2).value.get_d();
  CHECK(std::abs(s.mean - exact) < 4 * s.stderr_);
}

TEST_CASE("streams are reproducible") {
  const auto a = estimate_I(Ensemble::orthogonal, 1, 1, 2, 2000, 5, 3);
  const auto b = estimate_I(Ensemble::orthogonal, 1, 1, 2, 2000, 5, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("trace distribution is invariant under left multiplication") {
  Rng rng(8);
  const auto g = sample_symplectic(2, rng);
  std::vector<double> a, b;
  for (int i = 0; i < 10000; ++i) {
    a.push_back(sample_symplectic(2, rng).matrix.trace().real());
    b.push_back((g.matrix * sample_symplectic(2, rng).matrix).trace().real());
  }
  CHECK(ks_statistic(a, b) < ks_critical_1pct(a.size(), b.size()));
}

TEST_CASE("KS statistic") {
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_statistic({1, 2}, {3, 4}) == 1.0);
}
