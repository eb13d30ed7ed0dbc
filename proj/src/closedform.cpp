#include "secmom/closedform.hpp"

#include "secmom/error.hpp"
#include "secmom/ssyt_count.hpp"

namespace secmom::closedform {

namespace {

long outer_exponent(Ensemble e, unsigned k) {
  return e == Ensemble::symplectic ? long(k) * (k + 1) / 2 : long(k) * (k - 1) / 2;
}

Rational poly_eval(std::initializer_list<long> hi_to_lo, const Rational& v) {
  Rational acc = 0;
  for (long c : hi_to_lo) acc = acc * v + c;
  return acc;
}

PiecewisePolynomial::Piece power_piece(Rational lo, Rational hi, Rational shift, int sign,
                                       unsigned power, Rational scale) {
  // scale * (shift + sign*c)^power expanded.
  std::vector<Rational> c(power + 1);
  for (unsigned i = 0; i <= power; ++i) {
    Rational t = Rational(binomial(power, i)) * scale;
    for (unsigned e = 0; e < power - i; ++e) t *= shift;
    if (sign < 0 && i % 2 == 1) t = -t;
    c[i] = t;
  }
  return {lo, hi, Polynomial(c)};
}

}  // namespace

Integer closed_sum(Ensemble ensemble, unsigned k, unsigned n) {
  if (k == 0) throw DomainError("closed_sum: k must be >= 1");
  const long a = outer_exponent(ensemble, k);
  const long k2 = long(k) * k;
  Integer total = 0;
  for (long l = n % 2; l <= long(n); l += 2) {
    Integer outer = binomial((long(n) - l) / 2 + a - 1, a - 1);
    total += outer * outer * binomial(l + k2 - 1, k2 - 1);
  }
  if (ensemble == Ensemble::orthogonal) total *= 2;
  return total;
}

Integer I_sym_closed(unsigned k, unsigned n, unsigned N) {
  if (n > N)
    throw RangeError("I_sym_closed: n = " + std::to_string(n) + " > N = " + std::to_string(N) +
                     "; reflect or enumerate");
  return closed_sum(Ensemble::symplectic, k, n);
}

Integer I_orth_closed(unsigned k, unsigned n, unsigned N) {
  if (k < 2) throw DomainError("I_orth_closed: needs k >= 2");
  if (n > N)
    throw RangeError("I_orth_closed: n = " + std::to_string(n) + " > N = " + std::to_string(N) +
                     "; reflect or enumerate");
  return closed_sum(Ensemble::orthogonal, k, n);
}

Evaluation evaluate(Ensemble ensemble, unsigned k, unsigned n, unsigned N) {
  const unsigned top = top_degree(ensemble, k, N);
  if (n > top) return {0, "closed"};
  const bool has_closed = !(ensemble == Ensemble::orthogonal && k < 2);
  if (has_closed && n <= N) return {closed_sum(ensemble, k, n), "closed"};
  if (has_closed && top - n <= N) return {closed_sum(ensemble, k, top - n), "closed-reflected"};
  return {ssyt::I_moment(ensemble, k, n, N).value, "ssyt"};
}

Integer reflect(Ensemble ensemble, unsigned k, unsigned n, unsigned N) {
  const unsigned top = top_degree(ensemble, k, N);
  if (n > top) throw DomainError("reflect: n exceeds the top degree " + std::to_string(top));
  return evaluate(ensemble, k, top - n, N).value;
}

unsigned validity_boundary(Ensemble ensemble, unsigned k, unsigned N) {
  const unsigned top = top_degree(ensemble, k, N);
  unsigned n = 0;
  while (n + 1 <= top && closed_sum(ensemble, k, n + 1) == ssyt::I_moment(ensemble, k, n + 1, N).value)
    ++n;
  return n;
}

Integer sym_k1_two_branch(unsigned n, unsigned N) {
  if (n > 2 * N) return 0;
  return n <= N ? Integer((n + 2) / 2) : Integer((2 * N - n + 2) / 2);
}

Rational sym_k2_display(long n) {
  Rational v(n);
  Rational main = poly_eval({6, 240, 4088, 38640, 221354, 787080, 1698572, 2031720, 1018395}, v) /
                  Rational(1290240);
  Rational osc = poly_eval({2, 40, 284, 840, 863}, v) / Rational(4096);
  return n % 2 == 0 ? Rational(main + osc) : Rational(main - osc);
}

Rational orth_k2_display(long n) {
  Rational v(n);
  Rational main = poly_eval({2, 24, 100, 168, 93}, v) / Rational(48);
  Rational osc(1, 16);
  return n % 2 == 0 ? Rational(main + osc) : Rational(main - osc);
}

Integer orth_k2_floor_display(long n) {
  Integer s = Integer(n + 3) * (n + 3);
  Integer q = (s - 1) * (s - 3);
  Integer f;
  mpz_fdiv_q_ui(f.get_mpz_t(), q.get_mpz_t(), 48);
  return 2 * f;
}

namespace {
QuasiPolynomial display_quasi(std::vector<long> main, long main_den, std::vector<long> osc,
                              long osc_den) {
  std::vector<Rational> even(main.size()), odd(main.size());
  const std::size_t d = main.size() - 1;
  for (std::size_t i = 0; i < main.size(); ++i) {
    even[d - i] = odd[d - i] = Rational(main[i], main_den);
  }
  const std::size_t od = osc.size() - 1;
  for (std::size_t i = 0; i < osc.size(); ++i) {
    even[od - i] += Rational(osc[i], osc_den);
    odd[od - i] -= Rational(osc[i], osc_den);
  }
  return QuasiPolynomial({Polynomial(even), Polynomial(odd)}, "n");
}
}  // namespace

QuasiPolynomial sym_k2_quasi() {
  return display_quasi({6, 240, 4088, 38640, 221354, 787080, 1698572, 2031720, 1018395}, 1290240,
                       {2, 40, 284, 840, 863}, 4096);
}

QuasiPolynomial orth_k2_quasi() { return display_quasi({2, 24, 100, 168, 93}, 48, {1}, 16); }

std::optional<Rational> gamma_piece(Ensemble ensemble, unsigned k, const Rational& c) {
  if (k < 1 || k > 2) throw UnsupportedError("gamma_piece: only k = 1, 2 are tabulated");
  using P = PiecewisePolynomial::Piece;
  std::vector<P> pieces;
  const Rational half(1, 2);
  if (ensemble == Ensemble::symplectic && k == 1) {
    pieces = {power_piece(0, half, 0, 1, 1, half), power_piece(half, 1, 1, -1, 1, half)};
  } else if (ensemble == Ensemble::symplectic) {
    const Rational s(1, 215040);
    pieces = {power_piece(0, half, 0, 1, 8, s), power_piece(Rational(3, 2), 2, 2, -1, 8, s)};
  } else if (k == 2) {
    const Rational s(1, 24);
    pieces = {power_piece(0, half, 0, 1, 4, s), power_piece(Rational(3, 2), 2, 2, -1, 4, s)};
  } else {
    return std::nullopt;
  }
  return PiecewisePolynomial(pieces)(c);
}

}  // namespace secmom::closedform
