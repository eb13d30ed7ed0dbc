#include "secmom/ehrhart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "secmom/simd/kernels.hpp"

namespace secmom::ehrhart {

namespace {

unsigned columns(Ensemble e, unsigned k) { return e == Ensemble::symplectic ? 2 * k : 2 * k - 1; }

using Wide = __int128;

Integer to_integer(Wide v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

// C(t + m - 1, m - 1): compositions of t into m nonnegative parts.
Wide compositions(long t, unsigned m) {
  if (t < 0) return 0;
  if (m == 0) return t == 0 ? 1 : 0;
  Wide r = 1;
  for (unsigned i = 1; i < m; ++i) r = r * (t + i) / i;
  return r;
}

// Integer vectors with lo_i <= z_i <= hi_i and sum z_i = s.
Wide box_count(const long* lo, const long* hi, unsigned m, long s) {
  long base = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (hi[i] < lo[i]) return 0;
    base += lo[i];
  }
  const long t = s - base;
  if (t < 0) return 0;
  Wide total = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    long shift = 0;
    int sign = 1;
    for (unsigned i = 0; i < m; ++i)
      if (mask >> i & 1u) {
        shift += hi[i] - lo[i] + 1;
        sign = -sign;
      }
    if (shift > t) continue;
    total += sign * compositions(t - shift, m);
  }
  return total;
}

class Counter {
 public:
  Counter(Ensemble e, unsigned k, unsigned dilate, long n)
      : e_(e), k_(k), C_(columns(e, k)), D_(dilate), n_(n) {}

  Integer run() {
    Integer total = 0;
    std::vector<long> v(k_);
    middle(v, 0, n_, D_, total);
    return total;
  }

 private:
  // Decreasing middle columns with entries in [0, D] summing to n.
  void middle(std::vector<long>& v, unsigned r, long remaining, long cap, Integer& total) {
    if (r + 1 == k_) {
      if (remaining > cap) return;
      v[r] = remaining;
      Wide up = above(v);
      if (up != 0) total += below(v) * to_integer(up);
      return;
    }
    for (long x = std::min(cap, remaining); x >= 0; --x) {
      // Remaining rows hold at most x each.
      if (remaining - x > x * static_cast<long>(k_ - r - 1)) break;
      v[r] = x;
      middle(v, r + 1, remaining - x, x, total);
    }
  }

  // Gelfand-Tsetlin patterns strictly below column v.
  Integer below(const std::vector<long>& v) {
    if (v.size() <= 1) return 1;
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    Integer total = 0;
    std::vector<long> a(v.size() - 1);
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
      if (r == a.size()) {
        total += below(a);
        return;
      }
      for (long x = v[r + 1]; x <= v[r]; ++x) {
        a[r] = x;
        rec(r + 1);
      }
    };
    rec(0);
    memo_.emplace(v, total);
    return total;
  }

  // Interval for row r (0-based) of the column after `a`.
  void bounds(const std::vector<long>& a, std::size_t r, long& lo, long& hi) const {
    lo = r < a.size() ? a[r] : 0;
    hi = r == 0 ? D_ : a[r - 1];
  }

  Wide above(const std::vector<long>& v) {
    if (C_ == k_) return 1;  // O(3): the middle column is the top column
    return above_from(v);
  }

  Wide above_from(const std::vector<long>& a) {
    const std::size_t len = a.size() + 1;
    if (len == C_) return top(a);
    Wide total = 0;
    std::vector<long> b(len);
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
      if (r == len) {
        total += above_from(b);
        return;
      }
      long lo, hi;
      bounds(a, r, lo, hi);
      for (long x = lo; x <= hi; ++x) {
        b[r] = x;
        rec(r + 1);
      }
    };
    rec(0);
    return total;
  }

  Wide top(const std::vector<long>& a) const {
    const unsigned m = C_;
    long lo[16], hi[16];
    if (e_ == Ensemble::symplectic) {
      // Even entries summing to 2n: halve them.
      for (unsigned r = 0; r < m; ++r) {
        long l, h;
        bounds(a, r, l, h);
        lo[r] = (l + 1) / 2;
        hi[r] = h / 2;  // h >= 0
      }
      return box_count(lo, hi, m, n_);
    }
    Wide free_rows = 1;
    unsigned odd = 0;
    for (unsigned r = 0; r < m; ++r) {
      long l, h;
      bounds(a, r, l, h);
      if (h < l) return 0;
      if (r % 2 == 1) free_rows *= (h - l + 1);
      else {
        lo[odd] = l;
        hi[odd] = h;
        ++odd;
      }
    }
    return free_rows * box_count(lo, hi, odd, n_);
  }

  Ensemble e_;
  unsigned k_, C_;
  long D_, n_;
  std::map<std::vector<long>, Integer> memo_;
};

long resolve_n(const PolytopeModel& model, unsigned dilate) {
  if (model.ensemble == Ensemble::symplectic && dilate % 2 != 0)
    throw DomainError("lattice_count: symplectic dilate must be even (2N)");
  if (model.ensemble == Ensemble::orthogonal && dilate % 2 != 1)
    throw DomainError("lattice_count: orthogonal dilate must be odd (2N+1)");
  Rational n = model.c * dilate;
  if (!is_integer(n))
    throw DomainError("lattice_count: c * dilate = " + to_string(n) + " is not an integer");
  return n.get_num().get_si();
}

}  // namespace

PolytopeModel PolytopeModel::build(Ensemble ensemble, unsigned k, const Rational& c) {
  if (k == 0) throw DomainError("PolytopeModel: k must be >= 1");
  if (c < 0 || c > k) throw DomainError("PolytopeModel: c must lie in [0, k]");
  PolytopeModel m{ensemble, k, c, {}, {}, {}};
  const unsigned C = columns(ensemble, k);
  std::map<std::pair<unsigned, unsigned>, std::size_t> index;
  for (unsigned s = 1; s <= C; ++s)
    for (unsigned r = 1; r <= s; ++r) {
      if (r == 1 && (s == k || s == C)) continue;
      index[{r, s}] = m.coords.size();
      m.coords.emplace_back(r, s);
      m.even.push_back(ensemble == Ensemble::symplectic && s == C && r >= 2);
    }
  const std::size_t dim = m.coords.size();
  struct Affine {
    std::vector<Rational> a;
    Rational b;
  };
  auto cell = [&](unsigned r, unsigned s) {
    Affine f{std::vector<Rational>(dim, 0), 0};
    if (auto it = index.find({r, s}); it != index.end()) {
      f.a[it->second] = 1;
      return f;
    }
    if (s == k) {
      f.b = c;
      for (unsigned i = 2; i <= k; ++i) f.a[index.at({i, k})] = -1;
    } else if (ensemble == Ensemble::symplectic) {
      f.b = 2 * c;
      for (unsigned i = 2; i <= C; ++i) f.a[index.at({i, C})] = -1;
    } else {
      f.b = c;
      for (unsigned i = 3; i <= C; i += 2) f.a[index.at({i, C})] = -1;
    }
    return f;
  };
  auto add = [&](const Affine& hi, const Affine& lo) {  // hi - lo >= 0
    LinearInequality q{std::vector<Rational>(dim), hi.b - lo.b};
    for (std::size_t i = 0; i < dim; ++i) q.coeffs[i] = hi.a[i] - lo.a[i];
    m.inequalities.push_back(std::move(q));
  };
  const Affine zero{std::vector<Rational>(dim, 0), 0};
  const Affine one{std::vector<Rational>(dim, 0), 1};
  for (unsigned s = 1; s <= C; ++s)
    for (unsigned r = 1; r <= s; ++r) {
      add(cell(r, s), zero);
      add(one, cell(r, s));
      if (s < C) {
        add(cell(r, s + 1), cell(r, s));
        add(cell(r, s), cell(r + 1, s + 1));
      }
    }
  return m;
}

bool PolytopeModel::contains(const std::vector<Rational>& u) const {
  for (const auto& q : inequalities) {
    Rational acc = q.constant;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (q.coeffs[i] != 0) acc += q.coeffs[i] * u[i];
    if (acc < 0) return false;
  }
  return true;
}

bool PolytopeModel::contains_dilated(const std::vector<long>& x, long dilate) const {
  for (const auto& q : inequalities) {
    Rational acc = q.constant * dilate;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (q.coeffs[i] != 0) acc += q.coeffs[i] * x[i];
    if (acc < 0) return false;
  }
  return true;
}

Integer lattice_count(const PolytopeModel& model, unsigned dilate) {
  const long n = resolve_n(model, dilate);
  return Counter(model.ensemble, model.k, dilate, n).run();
}

Integer lattice_count_bruteforce(const PolytopeModel& model, unsigned dilate) {
  resolve_n(model, dilate);
  const std::size_t dim = model.dimension();
  // Check each inequality once its last variable is assigned.
  std::vector<std::vector<std::size_t>> due(dim + 1);
  for (std::size_t q = 0; q < model.inequalities.size(); ++q) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < dim; ++i)
      if (model.inequalities[q].coeffs[i] != 0) last = i + 1;
    due[last].push_back(q);
  }
  std::vector<long> x(dim, 0);
  auto holds = [&](std::size_t q) {
    const auto& ineq = model.inequalities[q];
    Rational acc = ineq.constant * static_cast<long>(dilate);
    for (std::size_t i = 0; i < dim; ++i)
      if (ineq.coeffs[i] != 0) acc += ineq.coeffs[i] * x[i];
    return acc >= 0;
  };
  for (std::size_t q : due[0])
    if (!holds(q)) return 0;
  Integer total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == dim) {
      ++total;
      return;
    }
    const long step = model.even[i] ? 2 : 1;
    for (long v = 0; v <= static_cast<long>(dilate); v += step) {
      x[i] = v;
      bool ok = true;
      for (std::size_t q : due[i + 1])
        if (!holds(q)) {
          ok = false;
          break;
        }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
  return total;
}

FitFailure::FitFailure(long point, Rational residual)
    : ConsistencyError("fit failure at " + std::to_string(point) + ": residual " +
                       to_string(residual)),
      point_(point),
      residual_(std::move(residual)) {}

namespace {

// Solves the Vandermonde system for the interpolating polynomial.
std::vector<Rational> interpolate(const std::vector<std::pair<long, Rational>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = p;
      p *= pts[i].first;
    }
    a[i][n] = pts[i].second;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
  return out;
}

}  // namespace

Fit fit_quasi_polynomial(std::vector<std::pair<long, Rational>> samples, unsigned degree,
                         unsigned period, std::string var) {
  if (period == 0) throw DomainError("fit_quasi_polynomial: period must be >= 1");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<std::pair<long, Rational>>> classes(period);
  for (auto& s : samples) {
    auto& cls = classes[static_cast<std::size_t>(((s.first % long(period)) + period) % period)];
    if (!cls.empty() && cls.back().first == s.first) {
      if (cls.back().second != s.second) throw FitFailure(s.first, s.second - cls.back().second);
      continue;
    }
    cls.push_back(s);
  }
  std::vector<Polynomial> pieces(period);
  std::vector<bool> fitted(period, false);
  for (unsigned r = 0; r < period; ++r) {
    auto& cls = classes[r];
    if (cls.empty()) continue;
    if (cls.size() < degree + 2)
      throw DomainError("fit_quasi_polynomial: residue class " + std::to_string(r) + " has " +
                        std::to_string(cls.size()) + " samples, need " +
                        std::to_string(degree + 2));
    std::vector<std::pair<long, Rational>> head(cls.begin(), cls.begin() + degree + 1);
    Polynomial p(interpolate(head));
    for (std::size_t i = degree + 1; i < cls.size(); ++i) {
      Rational residual = cls[i].second - p(Rational(cls[i].first));
      if (residual != 0) throw FitFailure(cls[i].first, residual);
    }
    pieces[r] = p;
    fitted[r] = true;
  }
  return Fit{QuasiPolynomial(pieces, std::move(var)), fitted, degree};
}

unsigned moment_degree(Ensemble ensemble, unsigned k) {
  return ensemble == Ensemble::symplectic ? 2 * k * k + k - 2 : 2 * k * k - k - 2;
}

Rational gamma_from_fit(Ensemble ensemble, unsigned k, const Fit& fit) {
  const unsigned d = moment_degree(ensemble, k);
  if (fit.degree != d)
    throw ConsistencyError("gamma_from_fit: fit degree " + std::to_string(fit.degree) +
                           " but the moment has degree " + std::to_string(d));
  std::optional<Rational> lead;
  for (unsigned r = 0; r < fit.poly.period(); ++r) {
    if (!fit.fitted[r]) continue;
    const auto& c = fit.poly.piece(r).coeffs();
    Rational l = c.size() > d ? c[d] : Rational(0);
    if (lead && *lead != l)
      throw ConsistencyError("gamma_from_fit: residue classes disagree in the leading coefficient (" +
                             to_string(*lead) + " vs " + to_string(l) + ")");
    lead = l;
  }
  if (!lead) throw DomainError("gamma_from_fit: empty fit");
  if (ensemble == Ensemble::orthogonal) return *lead;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, d);
  return *lead / Rational(scale);
}

GammaSamples gamma_samples(Ensemble ensemble, unsigned k, const Rational& c, unsigned count,
                           unsigned min_size) {
  const PolytopeModel model = PolytopeModel::build(ensemble, k, c);
  Integer b_z = c.get_den();
  const long b = b_z.get_si();
  GammaSamples out;
  if (ensemble == Ensemble::symplectic) {
    // 2N must be a multiple of b.
    const long step = b % 2 == 0 ? b / 2 : b;
    out.period = static_cast<unsigned>(2 * step);
    out.var = "N";
    long N = ((static_cast<long>(min_size) + step - 1) / step) * step;
    if (N == 0) N = step;
    for (unsigned i = 0; i < 2 * count; ++i, N += step)
      out.points.emplace_back(N, Rational(lattice_count(model, static_cast<unsigned>(2 * N))));
  } else {
    if (b % 2 == 0) throw DomainError("gamma_samples: 2N+1 cannot be a multiple of an even b");
    out.period = static_cast<unsigned>(2 * b);
    out.var = "M";
    long M = b;
    while (M < static_cast<long>(min_size)) M += 2 * b;
    for (unsigned i = 0; i < count; ++i, M += 2 * b)
      out.points.emplace_back(M, Rational(2 * lattice_count(model, static_cast<unsigned>(M))));
  }
  return out;
}

}  // namespace secmom::ehrhart

namespace secmom::ehrhart {

McSampler parse_sampler(std::string_view name) {
  if (name == "uniform") return McSampler::uniform;
  if (name == "sequential") return McSampler::sequential;
  throw DomainError("unknown sampler '" + std::string(name) + "' (uniform|sequential)");
}

std::string_view sampler_name(McSampler s) {
  return s == McSampler::uniform ? "uniform" : "sequential";
}

namespace {

// Cells (r, s) of the reduced triangle, k <= s <= C, 1 <= r <= s.
struct Triangle {
  unsigned k, C;
  std::vector<std::uint32_t> offset;  // first index of column s

  Triangle(unsigned k_, unsigned C_) : k(k_), C(C_), offset(C_ + 2, 0) {
    std::uint32_t at = 0;
    for (unsigned s = k; s <= C; ++s) {
      offset[s] = at;
      at += s;
    }
    offset[C + 1] = at;
  }
  std::uint32_t size() const { return offset[C + 1]; }
  std::uint32_t at(unsigned r, unsigned s) const { return offset[s] + r - 1; }
};

struct Partial {
  double sum = 0, sum_sq = 0;
  std::uint64_t accepted = 0;
};

double resolve_top(Ensemble e, const Triangle& t, double c, const double* x) {
  double top = e == Ensemble::symplectic ? 2 * c : c;
  const unsigned step = e == Ensemble::symplectic ? 1 : 2;
  for (unsigned r = e == Ensemble::symplectic ? 2 : 3; r <= t.C; r += step) top -= x[t.at(r, t.C)];
  return top;
}

double resolve_middle(const Triangle& t, double c, const double* x) {
  double mid = c;
  for (unsigned r = 2; r <= t.k; ++r) mid -= x[t.at(r, t.k)];
  return mid;
}

void run_uniform(Ensemble e, const Triangle& t, double c, std::uint64_t n, Rng& rng,
                 Partial& out) {
  simd::ConstrainedVandermondeShape shape;
  for (unsigned s = t.k; s < t.C; ++s)
    for (unsigned r = 1; r <= s; ++r) {
      shape.leq_lo.push_back(t.at(r, s));
      shape.leq_hi.push_back(t.at(r, s + 1));
      shape.leq_lo.push_back(t.at(r + 1, s + 1));
      shape.leq_hi.push_back(t.at(r, s));
    }
  shape.unit_bounded = {t.at(1, t.k), t.at(1, t.C)};
  for (unsigned r = 1; r <= t.k; ++r) shape.vandermonde.push_back(t.at(r, t.k));

  constexpr std::size_t batch = 2048;
  const std::uint32_t cells = t.size();
  std::vector<std::vector<double>> cols(cells, std::vector<double>(batch));
  std::vector<const double*> ptrs(cells);
  for (std::uint32_t v = 0; v < cells; ++v) ptrs[v] = cols[v].data();
  std::vector<double> point(cells);
  simd::Accumulator acc;
  for (std::uint64_t done = 0; done < n;) {
    const std::size_t m = static_cast<std::size_t>(std::min<std::uint64_t>(batch, n - done));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::uint32_t v = 0; v < cells; ++v) point[v] = uniform01(rng);
      point[t.at(1, t.k)] = resolve_middle(t, c, point.data());
      point[t.at(1, t.C)] = resolve_top(e, t, c, point.data());
      for (std::uint32_t v = 0; v < cells; ++v) cols[v][i] = point[v];
    }
    simd::constrained_vandermonde(shape, ptrs.data(), m, acc);
    done += m;
  }
  out.sum += acc.sum;
  out.sum_sq += acc.sum_sq;
  out.accepted += acc.accepted;
}

void run_sequential(Ensemble e, const Triangle& t, double c, std::uint64_t n, Rng& rng,
                    Partial& out) {
  std::vector<double> x(t.size());
  std::vector<double> top(t.C - 1);
  double inv_fact = 1;
  for (unsigned i = 2; i < t.C; ++i) inv_fact /= i;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (double& u : top) u = uniform01(rng);
    std::sort(top.begin(), top.end(), std::greater<>());
    for (unsigned r = 2; r <= t.C; ++r) x[t.at(r, t.C)] = top[r - 2];
    const double head = resolve_top(e, t, c, x.data());
    if (head > 1 || (t.C > 1 && head < x[t.at(2, t.C)])) continue;
    x[t.at(1, t.C)] = head;
    double w = inv_fact;
    bool ok = true;
    for (unsigned s = t.C - 1; s >= t.k && ok; --s) {
      for (unsigned r = s == t.k ? 2 : 1; r <= s; ++r) {
        const double lo = x[t.at(r + 1, s + 1)], hi = x[t.at(r, s + 1)];
        w *= hi - lo;
        x[t.at(r, s)] = lo + (hi - lo) * uniform01(rng);
      }
      if (s == t.k) {
        const double mid = resolve_middle(t, c, x.data());
        ok = mid >= x[t.at(2, s + 1)] && mid <= x[t.at(1, s + 1)];
        x[t.at(1, s)] = mid;
      }
    }
    if (!ok || w == 0) continue;
    for (unsigned a = 1; a <= t.k; ++a)
      for (unsigned b = a + 1; b <= t.k; ++b) w *= x[t.at(a, t.k)] - x[t.at(b, t.k)];
    out.sum += w;
    out.sum_sq += w * w;
    ++out.accepted;
  }
}

}  // namespace

McResult gamma_mc_integral(Ensemble ensemble, unsigned k, double c, std::uint64_t samples,
                           std::uint64_t seed, unsigned streams, McSampler sampler) {
  if (k == 0) throw DomainError("gamma_mc_integral: k must be >= 1");
  if (!(c > 0 && c < k)) throw DomainError("gamma_mc_integral: c must lie in (0, k)");
  if (ensemble == Ensemble::orthogonal && k == 1)
    throw UnsupportedError("gamma_mc_integral: the O(3) region has no free cells");
  if (samples < 2) throw DomainError("gamma_mc_integral: need at least 2 samples");
  if (streams == 0) streams = 1;
  const Triangle tri(k, columns(ensemble, k));

  std::vector<Partial> parts(streams);
  auto work = [&](unsigned i) {
    const std::uint64_t n = samples / streams + (i < samples % streams ? 1 : 0);
    Rng rng(stream_seed(seed, i));
    if (sampler == McSampler::uniform) run_uniform(ensemble, tri, c, n, rng, parts[i]);
    else run_sequential(ensemble, tri, c, n, rng, parts[i]);
  };
  if (streams == 1) work(0);
  else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < streams; ++i) pool.emplace_back(work, i);
    for (auto& th : pool) th.join();
  }
  Partial total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
    total.accepted += p.accepted;
  }
  double pref = ensemble == Ensemble::symplectic ? std::ldexp(1.0, 1 - 2 * static_cast<int>(k)) : 2.0;
  pref /= barnes_g(k).get_d();
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq - total.sum * mean) / (n - 1));
  McResult r;
  r.estimate = pref * mean;
  r.stderr_ = pref * std::sqrt(var / n);
  r.samples = samples;
  r.accepted = total.accepted;
  r.degenerate = total.accepted == 0;
  return r;
}

}  // namespace secmom::ehrhart
