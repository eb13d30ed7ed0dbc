#include "secmom/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>

#include "secmom/error.hpp"
#include "secmom/simd/kernels.hpp"

namespace secmom::rmt {

using cd = std::complex<double>;

namespace {

constexpr double kImagTolerance = 1e-8;

cd complex_gaussian(Rng& rng, std::normal_distribution<double>& g) {
  return cd(g(rng), g(rng)) * std::sqrt(0.5);
}

std::vector<double> real_parts(const std::vector<cd>& c) {
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (std::abs(c[j].imag()) > kImagTolerance)
      throw NumericalError("secular coefficient " + std::to_string(j) + " has imaginary part " +
                           std::to_string(c[j].imag()));
    out[j] = c[j].real();
  }
  out[0] = 1.0;
  return out;
}

}  // namespace

HaarSample sample_orthogonal(unsigned dim, Rng& rng) {
  if (dim == 0) throw DomainError("sample_orthogonal: dim must be >= 1");
  std::normal_distribution<double> g;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::MatrixXd a(dim, dim);
    for (unsigned j = 0; j < dim; ++j)
      for (unsigned i = 0; i < dim; ++i) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXd q = qr.householderQ();
    bool singular = false;
    for (unsigned i = 0; i < dim; ++i) {
      if (std::abs(r(i, i)) < 1e-12) singular = true;
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    }
    if (singular) continue;
    HaarSample s{Ensemble::orthogonal, dim, q.cast<cd>(), q.determinant() > 0 ? 1 : -1};
    return s;
  }
  throw NumericalError("sample_orthogonal: singular Gaussian draw twice");
}

Eigen::MatrixXcd standard_form(unsigned N) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  for (unsigned i = 0; i < N; ++i) {
    j(i, N + i) = 1;
    j(N + i, i) = -1;
  }
  return j;
}

HaarSample sample_symplectic(unsigned N, Rng& rng) {
  if (N == 0) throw DomainError("sample_symplectic: N must be >= 1");
  std::normal_distribution<double> g;
  const unsigned dim = 2 * N;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  // -J conj(v): (a, b) -> (-conj b, conj a).
  auto partner = [N](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w(2 * N);
    w.head(N) = -v.tail(N).conjugate();
    w.tail(N) = v.head(N).conjugate();
    return w;
  };
  for (unsigned i = 0; i < N; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      Eigen::VectorXcd v(dim);
      for (unsigned r = 0; r < dim; ++r) v(r) = complex_gaussian(rng, g);
      for (int pass = 0; pass < 2; ++pass)
        for (unsigned j = 0; j < i; ++j) {
          v -= u.col(j) * u.col(j).dot(v);
          v -= u.col(N + j) * u.col(N + j).dot(v);
        }
      const double norm = v.norm();
      if (norm < 1e-12) continue;
      u.col(i) = v / norm;
      u.col(N + i) = partner(u.col(i));
      done = true;
    }
    if (!done) throw NumericalError("sample_symplectic: degenerate Gaussian draw twice");
  }
  return HaarSample{Ensemble::symplectic, dim, u, 1};
}

double unitarity_error(const Eigen::MatrixXcd& u) {
  const auto id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

double symplectic_form_error(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd j = standard_form(static_cast<unsigned>(u.rows() / 2));
  return (u.transpose() * j * u - j).cwiseAbs().maxCoeff();
}

namespace {

Eigen::VectorXcd eigenvalues(const HaarSample& s) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(s.matrix, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
  return solver.eigenvalues();
}

}  // namespace

std::vector<double> eigenphases(const HaarSample& s) {
  const Eigen::VectorXcd ev = eigenvalues(s);
  std::vector<double> out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[i] = std::arg(ev(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> secular_coeffs(const HaarSample& s) {
  const Eigen::VectorXcd ev = eigenvalues(s);
  std::vector<cd> c(s.dim + 1, cd(0));
  c[0] = 1;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = i + 1; j >= 1; --j) c[j] += ev(i) * c[j - 1];
  return real_parts(c);
}

std::vector<double> secular_coeffs_leverrier(const HaarSample& s) {
  // det(tI - U) = sum_j a_j t^(dim-j); Sc_j = (-1)^j a_j.
  const unsigned n = s.dim;
  const auto id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::vector<cd> c(n + 1);
  c[0] = 1;
  cd a_prev = 1;
  for (unsigned j = 1; j <= n; ++j) {
    m = s.matrix * m + a_prev * id;
    const cd a = -(s.matrix * m).trace() / static_cast<double>(j);
    c[j] = (j % 2 == 0) ? a : -a;
    a_prev = a;
  }
  return real_parts(c);
}

double composition_sum(const std::vector<double>& sc, unsigned k, unsigned n) {
  // Recursion over the last part.
  std::vector<double> cur(n + 1, 0.0);
  cur[0] = 1.0;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<double> next(n + 1, 0.0);
    for (unsigned t = 0; t <= n; ++t)
      for (unsigned j = 0; j <= t && j < sc.size(); ++j) next[t] += sc[j] * cur[t - j];
    cur.swap(next);
  }
  return cur[n];
}

Estimate estimate_I(Ensemble ensemble, unsigned k, unsigned n, unsigned N,
                    std::uint64_t samples, std::uint64_t seed, unsigned streams) {
  if (k == 0) throw DomainError("estimate_I: k must be >= 1");
  if (samples < 2) throw DomainError("estimate_I: need at least 2 samples");
  if (ensemble == Ensemble::symplectic && N == 0)
    throw DomainError("estimate_I: USp(0) has no samples");
  if (streams == 0) streams = 1;
  const unsigned dim = ensemble == Ensemble::symplectic ? 2 * N : 2 * N + 1;
  struct Part {
    double sum = 0, sum_sq = 0;
  };
  std::vector<Part> parts(streams);
  auto work = [&](unsigned idx) {
    const std::uint64_t count = samples / streams + (idx < samples % streams ? 1 : 0);
    Rng rng(stream_seed(seed, idx));
    constexpr std::size_t batch = 256;
    std::vector<std::vector<double>> cols(dim + 1, std::vector<double>(batch));
    std::vector<const double*> ptrs(dim + 1);
    for (unsigned j = 0; j <= dim; ++j) ptrs[j] = cols[j].data();
    std::vector<double> out(batch);
    for (std::uint64_t done = 0; done < count;) {
      const std::size_t m = static_cast<std::size_t>(std::min<std::uint64_t>(batch, count - done));
      for (std::size_t s = 0; s < m; ++s) {
        const HaarSample h = ensemble == Ensemble::symplectic ? sample_symplectic(N, rng)
                                                              : sample_orthogonal(dim, rng);
        const auto sc = secular_coeffs(h);
        for (unsigned j = 0; j <= dim; ++j) cols[j][s] = sc[j];
      }
      simd::power_coefficient_sq(ptrs.data(), dim, k, n, m, out.data());
      for (std::size_t s = 0; s < m; ++s) {
        parts[idx].sum += out[s];
        parts[idx].sum_sq += out[s] * out[s];
      }
      done += m;
    }
  };
  if (streams == 1) work(0);
  else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < streams; ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }
  double sum = 0, sum_sq = 0;
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double cnt = static_cast<double>(samples);
  const double mean = sum / cnt;
  const double var = std::max(0.0, (sum_sq - sum * mean) / (cnt - 1));
  const double scale = ensemble == Ensemble::orthogonal ? 2.0 : 1.0;
  return Estimate{scale * mean, scale * std::sqrt(var / cnt), samples};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

}  // namespace secmom::rmt
