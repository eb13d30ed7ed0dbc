#include "doctest.h"
#include "secmom/closedform.hpp"
#include "secmom/error.hpp"
#include "secmom/ssyt_count.hpp"

using namespace secmom;
using namespace secmom::closedform;

TEST_CASE("barnes G") {
  CHECK(barnes_g(1) == 1);
  CHECK(barnes_g(2) == 1);
  CHECK(barnes_g(4) == 12);
}

TEST_CASE("closed form examples") {
  CHECK(I_sym_closed(1, 4, 5) == 3);
  CHECK(I_sym_closed(2, 0, 3) == 1);
  CHECK(I_sym_closed(2, 1, 3) == 4);
  CHECK(I_orth_closed(2, 0, 3) == 2);
  CHECK(I_orth_closed(2, 1, 3) == 8);
  CHECK(I_orth_closed(2, 5, 6) == 160);
  CHECK_THROWS_AS(I_sym_closed(2, 4, 3), RangeError);
  CHECK_THROWS_AS(I_orth_closed(1, 0, 3), DomainError);
}

TEST_CASE("closed forms match tableau counts for n <= N") {
  for (unsigned k = 2; k <= 3; ++k)
    for (unsigned N = 0; N <= (k == 2 ? 8u : 4u); ++N)
      for (unsigned n = 0; n <= N; ++n) {
        CHECK(I_sym_closed(k, n, N) == ssyt::I_moment(Ensemble::symplectic, k, n, N).value);
        CHECK(I_orth_closed(k, n, N) == ssyt::I_moment(Ensemble::orthogonal, k, n, N).value);
      }
}

TEST_CASE("closed k = 2 quasi-polynomials agree with the binomial sums") {
  for (long n = 0; n <= 30; ++n) {
    CHECK(sym_k2_display(n) == Rational(closed_sum(Ensemble::symplectic, 2, n)));
    CHECK(orth_k2_display(n) == Rational(closed_sum(Ensemble::orthogonal, 2, n)));
    CHECK(orth_k2_floor_display(n) == closed_sum(Ensemble::orthogonal, 2, n));
    CHECK(sym_k2_quasi()(n) == sym_k2_display(n));
    CHECK(orth_k2_quasi()(n) == orth_k2_display(n));
  }
  CHECK(sym_k2_quasi().degree() == 8);
  CHECK(orth_k2_quasi().degree() == 4);
}

TEST_CASE("leading coefficient of the symplectic sum is positive") {
  // Finite differences of order d on one parity class give d! 2^d * lead.
  for (unsigned k = 1; k <= 3; ++k) {
    const unsigned d = 2 * k * k + k - 2;
    std::vector<Integer> v;
    for (unsigned i = 0; i <= d; ++i) v.push_back(closed_sum(Ensemble::symplectic, k, 2 * i));
    for (unsigned r = 0; r < d; ++r)
      for (unsigned i = 0; i + 1 < v.size() - r; ++i) v[i] = v[i + 1] - v[i];
    CHECK(v[0] > 0);
  }
}

TEST_CASE("reflection and dispatch") {
  CHECK(reflect(Ensemble::symplectic, 1, 5, 3) == 1);
  for (unsigned N = 1; N <= 4; ++N) {
    CHECK(reflect(Ensemble::symplectic, 2, 4 * N, N) == 1);
    CHECK(reflect(Ensemble::orthogonal, 2, 2 * (2 * N + 1), N) == 2);
  }
  for (auto e : {Ensemble::symplectic, Ensemble::orthogonal})
    for (unsigned N = 0; N <= 4; ++N)
      for (unsigned n = 0; n <= top_degree(e, 2, N); ++n)
        CHECK(evaluate(e, 2, n, N).value == ssyt::I_moment(e, 2, n, N).value);
  CHECK(evaluate(Ensemble::symplectic, 2, 1, 3).engine == "closed");
  CHECK(evaluate(Ensemble::symplectic, 2, 11, 3).engine == "closed-reflected");
  CHECK(evaluate(Ensemble::symplectic, 2, 6, 3).engine == "ssyt");
  CHECK(evaluate(Ensemble::orthogonal, 1, 1, 3).engine == "ssyt");
}

TEST_CASE("k = 1 two-branch formula") {
  for (unsigned N = 0; N <= 6; ++N)
    for (unsigned n = 0; n <= 2 * N; ++n)
      CHECK(sym_k1_two_branch(n, N) == ssyt::I_moment(Ensemble::symplectic, 1, n, N).value);
}

TEST_CASE("validity boundary is at least N") {
  CHECK(validity_boundary(Ensemble::symplectic, 1, 1) == 1);
  for (unsigned N = 1; N <= 5; ++N) {
    CHECK(validity_boundary(Ensemble::symplectic, 2, N) >= N);
    CHECK(validity_boundary(Ensemble::orthogonal, 2, N) >= N);
  }
}

TEST_CASE("gamma pieces") {
  CHECK(*gamma_piece(Ensemble::symplectic, 1, Rational(1, 4)) == Rational(1, 8));
  CHECK(*gamma_piece(Ensemble::symplectic, 1, Rational(3, 4)) == Rational(1, 8));
  CHECK(*gamma_piece(Ensemble::symplectic, 2, Rational(1, 2)) == Rational(1, 55050240));
  CHECK(*gamma_piece(Ensemble::orthogonal, 2, Rational(1, 3)) == Rational(1, 1944));
  CHECK(*gamma_piece(Ensemble::orthogonal, 2, Rational(5, 3)) == Rational(1, 1944));
  CHECK_FALSE(gamma_piece(Ensemble::symplectic, 2, 1).has_value());
  CHECK_THROWS_AS(gamma_piece(Ensemble::symplectic, 3, Rational(1, 2)), UnsupportedError);
}

TEST_CASE("piecewise polynomial consistency") {
  using P = PiecewisePolynomial::Piece;
  CHECK_THROWS_AS(PiecewisePolynomial({P{0, 1, Polynomial({0, 1})}, P{1, 2, Polynomial({2})}}),
                  ConsistencyError);
  CHECK_THROWS_AS(PiecewisePolynomial({P{0, 2, Polynomial({0})}, P{1, 3, Polynomial({0})}}),
                  DomainError);
}
