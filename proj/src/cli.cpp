#include "secmom/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include "secmom/closedform.hpp"
#include "secmom/detgen.hpp"
#include "secmom/ehrhart.hpp"
#include "secmom/error.hpp"
#include "secmom/funcfield.hpp"
#include "secmom/rmt.hpp"
#include "secmom/ssyt_count.hpp"

namespace secmom::cli {

namespace {

using Cell = std::variant<std::monostate, std::string, long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
  }
};

const std::vector<std::string> kMomentColumns{"ensemble", "k", "m", "n", "N", "engine",
                                              "value", "stderr", "seed"};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
  } visit;
  std::string s = std::visit(visit, c);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_text(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_text(row[i]);
    os << "\n";
  }
}

void write_json(const Table& t, const nlohmann::ordered_json& meta, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<std::string>(c)) r[t.columns[i]] = std::get<std::string>(c);
      else if (std::holds_alternative<long long>(c)) r[t.columns[i]] = std::get<long long>(c);
      else if (std::holds_alternative<double>(c) && std::isfinite(std::get<double>(c)))
        r[t.columns[i]] = std::get<double>(c);
      else r[t.columns[i]] = nullptr;
    }
    doc["rows"].push_back(std::move(r));
  }
  os << doc.dump(2) << "\n";
}

struct Options {
  std::string ensemble = "sym";
  unsigned k = 1;
  std::string n = "0";
  unsigned N = 1;
  std::string c = "1/2";
  std::string engine = "auto";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string output;
  std::string sampler = "uniform";
  unsigned count = 0;
  int degree = -1;
  unsigned min_size = 1;
  std::uint32_t q = 3;
  unsigned l = 2;
  unsigned g = 1;
  std::string qs = "5,7,11,13";
  std::string kind = "sectors";
  unsigned n_max = 4;
};

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("malformed n '" + text + "' (expected n or lo:hi)");
    return static_cast<unsigned>(std::stoul(s));
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const unsigned v = number(text);
    return {v, v};
  }
  const unsigned lo = number(text.substr(0, colon)), hi = number(text.substr(colon + 1));
  if (lo > hi) throw DomainError("empty range '" + text + "'");
  return {lo, hi};
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("malformed list '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

// Runs fn(0..count-1) on up to `jobs` threads; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct ExactValue {
  Integer value;
  std::string engine;
};

ExactValue exact_moment(Ensemble e, unsigned k, unsigned n, unsigned N, const std::string& engine) {
  const unsigned top = top_degree(e, k, N);
  if (engine == "ssyt") return {ssyt::I_moment(e, k, n, N).value, "ssyt"};
  if (engine == "series") {
    if (n > top) return {0, "series"};
    const auto s = detgen::gen_series(e, k, N, n, n);
    return {require_integer(s.coeff(n, n), "series coefficient"), "series"};
  }
  if (engine == "closed") {
    if (e == Ensemble::orthogonal && k < 2)
      throw UnsupportedError("no closed form for the orthogonal k = 1 moment; use --engine ssyt");
    if (n > top) return {0, "closed"};
    if (n <= N) return {closedform::closed_sum(e, k, n), "closed"};
    if (top - n <= N) return {closedform::closed_sum(e, k, top - n), "closed-reflected"};
    throw RangeError("closed form not valid at n = " + std::to_string(n) + ", N = " +
                     std::to_string(N) + "; use --engine auto");
  }
  if (engine == "lattice") {
    const unsigned D = e == Ensemble::symplectic ? 2 * N : 2 * N + 1;
    if (D == 0) throw DomainError("lattice engine needs N >= 1 for the symplectic ensemble");
    if (n > k * D) return {0, "lattice"};
    const auto model = ehrhart::PolytopeModel::build(e, k, Rational(n, D));
    Integer v = ehrhart::lattice_count(model, D);
    if (e == Ensemble::orthogonal) v *= 2;
    return {v, "lattice"};
  }
  if (engine == "auto") {
    auto ev = closedform::evaluate(e, k, n, N);
    return {ev.value, "auto:" + ev.engine};
  }
  throw DomainError("unknown engine '" + engine + "'");
}

Table moment_mc(const Options& o, Ensemble e, const std::string& label) {
  const auto [lo, hi] = parse_range(o.n);
  Table t{kMomentColumns, {}};
  for (unsigned n = lo; n <= hi; ++n) {
    const Estimate est = rmt::estimate_I(e, o.k, n, o.N, o.samples, o.seed, o.jobs);
    t.add({std::string(ensemble_name(e)), (long long)o.k, (long long)n, (long long)n,
           (long long)o.N, label, est.mean, est.stderr_, std::to_string(o.seed)});
  }
  return t;
}

Table cmd_compute_i(const Options& o) {
  const Ensemble e = parse_ensemble(o.ensemble);
  if (o.k == 0) throw DomainError("k must be >= 1");
  if (o.engine == "mc") return moment_mc(o, e, "mc");
  const auto [lo, hi] = parse_range(o.n);
  std::vector<ExactValue> vals(hi - lo + 1);
  parallel_for(vals.size(), o.jobs, [&](std::size_t i) {
    vals[i] = exact_moment(e, o.k, lo + static_cast<unsigned>(i), o.N, o.engine);
  });
  Table t{kMomentColumns, {}};
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const long long n = lo + static_cast<long long>(i);
    t.add({std::string(ensemble_name(e)), (long long)o.k, n, n, (long long)o.N, vals[i].engine,
           to_string(vals[i].value), {}, {}});
  }
  return t;
}

Table cmd_grid(const Options& o) {
  const Ensemble e = parse_ensemble(o.ensemble);
  if (o.k == 0) throw DomainError("k must be >= 1");
  const unsigned top = top_degree(e, o.k, o.N);
  std::vector<std::vector<std::string>> grid(top + 1, std::vector<std::string>(top + 1));
  std::string engine = o.engine == "auto" ? "ssyt" : o.engine;
  if (engine == "ssyt") {
    const auto g = ssyt::J_grid(e, o.k, o.N);
    for (unsigned m = 0; m <= top; ++m)
      for (unsigned n = 0; n <= top; ++n) grid[m][n] = to_string(g[m][n]);
  } else if (engine == "series") {
    const auto s = detgen::gen_series(e, o.k, o.N, top, top);
    for (unsigned m = 0; m <= top; ++m)
      for (unsigned n = 0; n <= top; ++n) grid[m][n] = to_string(s.coeff(m, n));
  } else {
    throw DomainError("grid supports --engine ssyt or series");
  }
  if (o.engine == "auto") engine = "auto:ssyt";
  Table t{kMomentColumns, {}};
  for (unsigned m = 0; m <= top; ++m)
    for (unsigned n = 0; n <= top; ++n)
      t.add({std::string(ensemble_name(e)), (long long)o.k, (long long)m, (long long)n,
             (long long)o.N, engine, grid[m][n], {}, {}});
  return t;
}

std::vector<std::string> gamma_columns() {
  auto cols = kMomentColumns;
  cols.push_back("c");
  return cols;
}

Table cmd_fit_gamma(const Options& o, std::ostream& err) {
  const Ensemble e = parse_ensemble(o.ensemble);
  const Rational c = parse_rational(o.c);
  if (o.k == 0) throw DomainError("k must be >= 1");
  const unsigned d = o.degree >= 0 ? static_cast<unsigned>(o.degree) : ehrhart::moment_degree(e, o.k);
  const unsigned count = o.count ? o.count : d + 2;
  const auto gs = ehrhart::gamma_samples(e, o.k, c, count, o.min_size);
  const auto fit = ehrhart::fit_quasi_polynomial(gs.points, d, gs.period, gs.var);
  err << "fit: degree " << d << ", period " << gs.period << " in " << gs.var << ", "
      << gs.points.size() << " samples up to " << gs.var << " = " << gs.points.back().first << "\n";
  const Rational gamma = ehrhart::gamma_from_fit(e, o.k, fit);
  Table t{gamma_columns(), {}};
  t.add({std::string(ensemble_name(e)), (long long)o.k, {}, {}, {}, "lattice-fit", to_string(gamma),
         {}, {}, to_string(c)});
  return t;
}

Table cmd_gamma_mc(const Options& o, std::ostream& err) {
  const Ensemble e = parse_ensemble(o.ensemble);
  const Rational c = parse_rational(o.c);
  const auto sampler = ehrhart::parse_sampler(o.sampler);
  const auto r = ehrhart::gamma_mc_integral(e, o.k, to_double(c), o.samples, o.seed, o.jobs, sampler);
  if (r.degenerate)
    err << "warning: no sample accepted out of " << r.samples << "; estimate is 0\n";
  Table t{gamma_columns(), {}};
  t.add({std::string(ensemble_name(e)), (long long)o.k, {}, {}, {},
         "mc:" + std::string(ehrhart::sampler_name(sampler)), r.estimate, r.stderr_,
         std::to_string(o.seed), to_string(c)});
  return t;
}

Table cmd_ff_identities(const Options& o) {
  using namespace ff;
  const std::uint32_t q = o.q;
  require_odd_prime(q);
  const SectorSetup s(q, o.k);
  const auto& g = s.group();
  const auto& chars = s.characters();
  Table t{{"check", "q", "k", "l", "n", "value", "expected", "status"}, {}};
  auto row = [&](const std::string& name, Cell n, Cell value, Cell expected, bool good) {
    t.add({name, (long long)q, (long long)o.k, (long long)o.l, n, value, expected,
           std::string(good ? "ok" : "FAIL")});
  };
  row("group-order", {}, (long long)g.order(), (long long)ipow(q, g.kappa), g.order() == ipow(q, g.kappa));
  const auto hk = (q - 1) * ipow(q, (o.k - 1) / 2);
  row("hk-order", {}, (long long)g.hk_order, (long long)hk, g.hk_order == hk);
  row("direct-product", {}, (long long)g.product_size, (long long)((q - 1) * ipow(q, o.k - 1)),
      g.product_size == (q - 1) * ipow(q, o.k - 1));
  long long odd = 0;
  for (const auto& xi : chars) odd += !xi.trivial() && xi.swan % 2 == 1;
  row("swan-odd", {}, odd, (long long)chars.size() - 1, odd == (long long)chars.size() - 1);
  double orth = 0;
  for (std::size_t a = 0; a < chars.size(); ++a)
    for (std::size_t b = 0; b < chars.size(); ++b) {
      std::complex<double> sum = 0;
      for (std::uint32_t v = 0; v < g.order(); ++v) sum += std::conj(chars[a](v)) * chars[b](v);
      orth = std::max(orth, std::abs(sum - (a == b ? double(g.order()) : 0.0)));
    }
  row("orthogonality", {}, orth, std::string("<1e-8"), orth < 1e-8);
  std::vector<ff::LPolynomial> Ls;
  long long degree_ok = 0;
  double root_err = 0;
  for (const auto& xi : chars) {
    Ls.push_back(l_polynomial(s, xi, true, false));
    if (xi.trivial()) continue;
    degree_ok += Ls.back().degree == xi.swan;
    for (const auto& r : Ls.back().roots)
      root_err = std::max(root_err, std::abs(std::abs(r) - 1 / std::sqrt(double(q))));
  }
  row("l-degree-equals-swan", {}, degree_ok, (long long)chars.size() - 1,
      degree_ok == (long long)chars.size() - 1);
  row("l-root-modulus", {}, root_err, std::string("<1e-6"), root_err < 1e-6);
  const DivisorTable d(q, o.l, o.n_max);
  for (unsigned n = 0; n <= o.n_max; ++n) {
    const long long s2 = chi2_weighted_sum(q, o.l, n);
    row("chi2-sum", (long long)n, s2, (long long)(n == 0), s2 == (n == 0 ? 1 : 0));
    double m0_err = 0;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (chars[i].trivial()) continue;
      // L is exact through degree k + 2 only.
      if (n >= Ls[i].coeffs.size()) continue;
      m0_err = std::max(m0_err, std::abs(m0_sum(s, d, n, chars[i], true) -
                                         power_coefficient(Ls[i].coeffs, o.l, n)));
    }
    row("m0-vs-l-power", (long long)n, m0_err, std::string("<1e-8"), m0_err < 1e-8);
    const auto v = sector_variance(s, d, n);
    const double diff = std::abs(v.variance - v.identity_rhs);
    row("sector-variance-identity", (long long)n, diff, std::string("<1e-8"), diff < 1e-8);
  }
  return t;
}

double sector_prediction(std::uint32_t q, unsigned k, unsigned l, unsigned n) {
  const unsigned kappa = k / 2;
  const double moment = ssyt::I_moment(Ensemble::orthogonal, l, n, kappa - 1).value.get_d();
  return double(ff::ipow(q, n)) / (4.0 * double(ff::ipow(q, kappa))) * moment;
}

Table cmd_ff_sectors(const Options& o) {
  ff::require_odd_prime(o.q);
  const auto [lo, hi] = parse_range(o.n);
  const ff::SectorSetup s(o.q, o.k);
  const ff::DivisorTable d(o.q, o.l, hi);
  Table t{{"q", "k", "l", "n", "variance", "identity_rhs", "mean", "mean_formula", "predicted", "ratio"}, {}};
  for (unsigned n = lo; n <= hi; ++n) {
    const auto v = ff::sector_variance(s, d, n);
    const double pred = sector_prediction(o.q, o.k, o.l, n);
    t.add({(long long)o.q, (long long)o.k, (long long)o.l, (long long)n, v.variance, v.identity_rhs,
           v.mean, v.mean_formula, pred, v.variance / pred});
  }
  return t;
}

Table cmd_ff_qr(const Options& o) {
  ff::require_odd_prime(o.q);
  const auto [lo, hi] = parse_range(o.n);
  Table t{{"q", "g", "k", "n", "variance", "predicted", "ratio"}, {}};
  for (unsigned n = lo; n <= hi; ++n) {
    if (n > 2 * o.g * o.k)
      throw RangeError("ff-variance-qr needs n <= 2 g k = " + std::to_string(2 * o.g * o.k));
    const double v = ff::qr_variance(o.q, o.g, o.k, n);
    const double pred =
        double(ff::ipow(o.q, n)) / 4.0 * ssyt::I_moment(Ensemble::symplectic, o.k, n, o.g).value.get_d();
    t.add({(long long)o.q, (long long)o.g, (long long)o.k, (long long)n, v, pred, v / pred});
  }
  return t;
}

Table cmd_compare_qsweep(const Options& o, std::ostream& err) {
  const auto qs = parse_list(o.qs);
  for (auto q : qs) ff::require_odd_prime(q);
  const auto [lo, hi] = parse_range(o.n);
  Table t{{"kind", "q", "n", "empirical", "predicted", "ratio", "identity_ratio", "deviation"}, {}};
  for (unsigned n = lo; n <= hi; ++n) {
    std::vector<ff::CompareRow> rows;
    if (o.kind == "sectors") rows = ff::compare_sectors(qs, o.k, o.l, n);
    else if (o.kind == "qr") rows = ff::compare_qr(qs, o.g, o.k, n);
    else throw DomainError("--kind must be sectors or qr");
    for (const auto& r : rows)
      t.add({o.kind, (long long)r.q, (long long)n, r.empirical, r.predicted, r.ratio, r.identity_ratio,
             std::abs(r.ratio - 1)});
    const double first = std::abs(rows.front().ratio - 1), last = std::abs(rows.back().ratio - 1);
    err << "trend n=" << n << ": |ratio-1| " << format_double(first) << " at q=" << rows.front().q
        << ", " << format_double(last) << " at q=" << rows.back().q << "\n";
  }
  return t;
}

Table cmd_self_check(const Options& o) {
  Table t{{"check", "ensemble", "k", "N", "status", "detail"}, {}};
  auto add = [&](const std::string& check, Ensemble e, unsigned k, unsigned N, const std::string& status,
                 const std::string& detail) {
    t.add({check, std::string(ensemble_name(e)), (long long)k, (long long)N, status, detail});
  };
  for (Ensemble e : {Ensemble::symplectic, Ensemble::orthogonal})
    for (unsigned k = 1; k <= 2; ++k)
      for (unsigned N = 1; N <= 3; ++N) {
        const unsigned top = top_degree(e, k, N);
        std::string bad;
        for (unsigned n = 0; n <= top && bad.empty(); ++n) {
          const Integer ref = ssyt::I_moment(e, k, n, N).value;
          for (const char* eng : {"series", "lattice", "auto"})
            if (exact_moment(e, k, n, N, eng).value != ref)
              bad = std::string(eng) + " differs at n=" + std::to_string(n);
          if (ref != ssyt::I_moment(e, k, top - n, N).value)
            bad = "reflection fails at n=" + std::to_string(n);
        }
        add("engines-agree", e, k, N, bad.empty() ? "ok" : "FAIL",
            bad.empty() ? "ssyt = series = lattice = auto, n = 0.." + std::to_string(top) : bad);
      }
  for (unsigned N = 1; N <= 3; ++N) {
    const auto a = ssyt::J_grid(Ensemble::symplectic, 2, N);
    const unsigned top = top_degree(Ensemble::symplectic, 2, N);
    const auto s = detgen::gen_series(Ensemble::symplectic, 2, N, top, top);
    bool same = true;
    for (unsigned m = 0; m <= top; ++m)
      for (unsigned n = 0; n <= top; ++n) same = same && Rational(a[m][n]) == s.coeff(m, n);
    add("grid", Ensemble::symplectic, 2, N, same ? "ok" : "FAIL", "J(m,n) from tableaux and from the determinant");
  }
  for (unsigned N = 1; N <= 3; ++N) {
    std::string vals;
    for (unsigned n = 0; n <= 2 * N + 1; ++n)
      vals += (n ? " " : "") + to_string(ssyt::I_moment(Ensemble::orthogonal, 1, n, N).value);
    add("discrepancy", Ensemble::orthogonal, 1, N, "recorded",
        "claimed I(n) = 0; enumerated I(n) for n = 0.." + std::to_string(2 * N + 1) + ": " + vals);
  }
  for (Ensemble e : {Ensemble::symplectic, Ensemble::orthogonal})
    for (unsigned k = 2; k <= 3; ++k)
      for (unsigned N = 1; N <= (k == 2 ? 4u : 2u); ++N) {
        const unsigned b = closedform::validity_boundary(e, k, N);
        const Rational claim = Rational(N) + Rational(1 + k, 2);
        add("validity-boundary", e, k, N, "recorded",
            "closed form matches for n <= " + std::to_string(b) + "; claimed bound n <= N + (1+k)/2 = " +
                to_string(claim));
      }
  (void)o;
  return t;
}

std::vector<std::string> apply_config(std::vector<std::string> args, std::string& config_path) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file '" + path + "'");
    config_path = path;
    std::vector<std::string> injected;
    for (const auto& item : CLI::ConfigINI().from_config(in)) {
      if (item.inputs.empty()) continue;
      injected.push_back("--" + item.fullname() + "=" + item.inputs.back());
    }
    // After the subcommand, before the explicit flags, so flags override.
    std::size_t at = 0;
    while (at < args.size() && args[at].rfind("-", 0) == 0) ++at;
    if (at < args.size()) ++at;
    args.insert(args.begin() + static_cast<long>(at), injected.begin(), injected.end());
    break;
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moments of characteristic polynomials: exact engines, lattice fits, Monte Carlo, "
               "function-field statistics"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.set_version_flag("--version", kVersion);
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", o.output, "write results to this file");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };
  auto moment = [&](CLI::App* sub) {
    sub->add_option("--ensemble", o.ensemble, "sym or orth");
    sub->add_option("--k", o.k, "number of divisor factors");
    sub->add_option("--N", o.N, "matrix size parameter");
  };
  auto mc = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Monte Carlo samples");
    sub->add_option("--seed", o.seed, "64-bit seed");
  };

  auto* compute = app.add_subcommand("compute-i", "diagonal moment I(n; N)");
  moment(compute);
  mc(compute);
  compute->add_option("--n", o.n, "n or lo:hi");
  compute->add_option("--engine", o.engine)->check(
      CLI::IsMember({"ssyt", "series", "closed", "lattice", "mc", "auto"}));
  common(compute);

  auto* grid = app.add_subcommand("grid", "full J(m, n; N) table");
  moment(grid);
  grid->add_option("--engine", o.engine)->check(CLI::IsMember({"ssyt", "series", "auto"}));
  common(grid);

  auto* fit = app.add_subcommand("fit-gamma", "leading coefficient from exact lattice-count fits");
  fit->add_option("--ensemble", o.ensemble);
  fit->add_option("--k", o.k);
  fit->add_option("--c", o.c, "rational a/b");
  fit->add_option("--count", o.count, "samples per residue class (default degree + 2)");
  fit->add_option("--degree", o.degree, "fit degree (default: the moment degree)");
  fit->add_option("--min-size", o.min_size, "smallest N (sym) or 2N+1 (orth)");
  common(fit);

  auto* gmc = app.add_subcommand("gamma-mc", "Monte Carlo value of the gamma integral");
  gmc->add_option("--ensemble", o.ensemble);
  gmc->add_option("--k", o.k);
  gmc->add_option("--c", o.c);
  gmc->add_option("--sampler", o.sampler)->check(CLI::IsMember({"uniform", "sequential"}));
  mc(gmc);
  common(gmc);

  auto* rmc = app.add_subcommand("rmt-mc", "Haar Monte Carlo estimate of I(n; N)");
  moment(rmc);
  mc(rmc);
  rmc->add_option("--n", o.n);
  common(rmc);

  auto* ffid = app.add_subcommand("ff-identities", "exact function-field identities");
  ffid->add_option("--q", o.q);
  ffid->add_option("--k", o.k);
  ffid->add_option("--l", o.l);
  ffid->add_option("--n-max", o.n_max);
  common(ffid);

  auto* ffs = app.add_subcommand("ff-variance-sectors", "sector variance and its character-sum identity");
  ffs->add_option("--q", o.q);
  ffs->add_option("--k", o.k);
  ffs->add_option("--l", o.l);
  ffs->add_option("--n", o.n);
  common(ffs);

  auto* ffq = app.add_subcommand("ff-variance-qr", "variance over quadratic residues mod irreducible P");
  ffq->add_option("--q", o.q);
  ffq->add_option("--g", o.g);
  ffq->add_option("--k", o.k);
  ffq->add_option("--n", o.n);
  common(ffq);

  auto* sweep = app.add_subcommand("compare-qsweep", "empirical variance against the matrix prediction over q");
  sweep->add_option("--kind", o.kind)->check(CLI::IsMember({"sectors", "qr"}));
  sweep->add_option("--qs", o.qs, "comma-separated primes");
  sweep->add_option("--k", o.k);
  sweep->add_option("--l", o.l);
  sweep->add_option("--g", o.g);
  sweep->add_option("--n", o.n);
  common(sweep);

  auto* self = app.add_subcommand("self-check", "cross-engine suite and discrepancy ledger");
  common(self);

  std::vector<std::string> args;
  try {
    args = apply_config(raw_args, config_path);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    Table table;
    if (name == "compute-i") table = cmd_compute_i(o);
    else if (name == "grid") table = cmd_grid(o);
    else if (name == "fit-gamma") table = cmd_fit_gamma(o, err);
    else if (name == "gamma-mc") table = cmd_gamma_mc(o, err);
    else if (name == "rmt-mc") table = moment_mc(o, parse_ensemble(o.ensemble), "rmt-mc");
    else if (name == "ff-identities") table = cmd_ff_identities(o);
    else if (name == "ff-variance-sectors") table = cmd_ff_sectors(o);
    else if (name == "ff-variance-qr") table = cmd_ff_qr(o);
    else if (name == "compare-qsweep") table = cmd_compare_qsweep(o, err);
    else table = cmd_self_check(o);

    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["subcommand"] = name;
    nlohmann::ordered_json config;
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      const auto& res = opt->results();
      config[opt->get_lnames().front()] = res.empty() ? opt->get_default_str() : res.back();
    }
    if (!config_path.empty()) config["config"] = config_path;
    meta["config"] = config;

    std::ofstream file;
    std::ostream* os = &out;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw DomainError("cannot write '" + o.output + "'");
      os = &file;
    }
    if (o.format == "json") write_json(table, meta, *os);
    else write_csv(table, *os);

    bool failed = false;
    const auto status = std::find(table.columns.begin(), table.columns.end(), "status");
    if (status != table.columns.end()) {
      const std::size_t col = static_cast<std::size_t>(status - table.columns.begin());
      for (const auto& row : table.rows)
        if (std::holds_alternative<std::string>(row[col]) && std::get<std::string>(row[col]) == "FAIL")
          failed = true;
    }
    if (failed) {
      err << "error: " << name << " found a failing check\n";
      return Exit::consistency;
    }
    return Exit::ok;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return Exit::consistency;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return Exit::consistency;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Exit::consistency;
  }
}

}  // namespace secmom::cli
