#include "secmom/ssyt_count.hpp"

#include <algorithm>
#include <map>

#include "secmom/error.hpp"

namespace secmom::ssyt {

namespace {

void shapes_rec(Ensemble ensemble, unsigned remaining, unsigned max_part_now,
                unsigned rows_left, std::vector<unsigned>& cur,
                std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (rows_left == 0) return;
  if (ensemble == Ensemble::symplectic) {
    for (unsigned p = std::min(max_part_now, remaining) & ~1u; p >= 2; p -= 2) {
      cur.push_back(p);
      shapes_rec(ensemble, remaining - p, p, rows_left - 1, cur, out);
      cur.pop_back();
    }
  } else {
    // Parts come in equal pairs.
    if (rows_left < 2) return;
    for (unsigned p = std::min(max_part_now, remaining / 2); p >= 1; --p) {
      cur.push_back(p);
      cur.push_back(p);
      shapes_rec(ensemble, remaining - 2 * p, p, rows_left - 2, cur, out);
      cur.pop_back();
      cur.pop_back();
    }
  }
}

// Row-by-row transfer: a row is described by its cumulative content
// P(v) = #entries <= v, v = 1..2k. Column strictness against the row above is
// P(v) <= Pabove(v - 1). The small-entry count of a row is P(k).
class RowDp {
 public:
  RowDp(const Partition& shape, unsigned k) : shape_(shape), k_(k) {}

  std::vector<Integer> run() {
    std::vector<unsigned> top(2 * k_ + 1, shape_.size());
    return from_row(0, top);
  }

 private:
  using Poly = std::vector<Integer>;

  static void add_shifted(Poly& acc, const Poly& p, unsigned shift) {
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != 0) acc[i + shift] += p[i];
  }

  // above[v] for v = 0..2k; above[0] = 0 except for the virtual row on top.
  Poly from_row(std::size_t row, const std::vector<unsigned>& above) {
    if (row == shape_.length()) return Poly{1};
    auto key = std::make_pair(row, above);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Poly acc;
    const unsigned width = shape_[row];
    const unsigned values = 2 * k_;
    std::vector<unsigned> cur(values + 1, 0);
    // Recursive fill of cur[1..2k].
    auto fill = [&](auto&& self, unsigned v) -> void {
      if (v == values) {
        // cur[2k] must equal the row width.
        unsigned hi = row == 0 ? width : std::min(width, above[v - 1]);
        if (hi < width || cur[v - 1] > width) return;
        cur[v] = width;
        Poly below = from_row(row + 1, cur);
        add_shifted(acc, below, cur[k_]);
        return;
      }
      unsigned lo = cur[v - 1];
      unsigned hi = row == 0 ? width : std::min(width, above[v - 1]);
      for (unsigned x = lo; x <= hi; ++x) {
        cur[v] = x;
        self(self, v + 1);
      }
    };
    if (values == 0) return Poly{width == 0 ? 1 : 0};
    fill(fill, 1);
    memo_.emplace(std::move(key), acc);
    return acc;
  }

  const Partition& shape_;
  unsigned k_;
  std::map<std::pair<std::size_t, std::vector<unsigned>>, Poly> memo_;
};

}  // namespace

std::vector<Partition> enumerate_shapes(Ensemble ensemble, unsigned k,
                                        unsigned N, unsigned weight) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  shapes_rec(ensemble, weight, max_part(ensemble, N), 2 * k, cur, out);
  return out;
}

std::vector<Integer> content_split_counts(const Partition& shape, unsigned k) {
  std::vector<Integer> out(shape.size() + 1, 0);
  if (shape.length() > 2 * k) return out;
  RowDp dp(shape, k);
  auto poly = dp.run();
  for (std::size_t i = 0; i < poly.size() && i < out.size(); ++i) out[i] = poly[i];
  return out;
}

Integer count_ssyt(const Partition& shape, unsigned k, unsigned m, unsigned n) {
  if (m + n != shape.size())
    throw DomainError("count_ssyt: m + n must equal |shape| (" +
                      std::to_string(m) + " + " + std::to_string(n) +
                      " != " + std::to_string(shape.size()) + ")");
  return content_split_counts(shape, k)[m];
}

Integer J_moment(Ensemble ensemble, unsigned k, unsigned m, unsigned n,
                 unsigned N) {
  Integer total = 0;
  for (const auto& shape : enumerate_shapes(ensemble, k, N, m + n))
    total += content_split_counts(shape, k)[m];
  if (ensemble == Ensemble::orthogonal) total *= 2;
  return total;
}

MomentValue I_moment(Ensemble ensemble, unsigned k, unsigned n, unsigned N) {
  if (k == 0) throw DomainError("I_moment: k must be >= 1");
  return MomentValue{ensemble, k, n, N, J_moment(ensemble, k, n, n, N)};
}

std::vector<std::vector<Integer>> J_grid(Ensemble ensemble, unsigned k,
                                         unsigned N) {
  const unsigned top = top_degree(ensemble, k, N);
  std::vector<std::vector<Integer>> grid(top + 1, std::vector<Integer>(top + 1, 0));
  for (unsigned w = 0; w <= 2 * top; ++w) {
    for (const auto& shape : enumerate_shapes(ensemble, k, N, w)) {
      auto split = content_split_counts(shape, k);
      for (unsigned m = 0; m <= w; ++m) {
        if (m > top || w - m > top) continue;
        grid[m][w - m] += split[m];
      }
    }
  }
  if (ensemble == Ensemble::orthogonal)
    for (auto& row : grid)
      for (auto& v : row) v *= 2;
  return grid;
}

int vertical_strip_coeff(const Partition& mu, unsigned N) {
  const unsigned cap = 2 * N + 1;
  if (mu.largest() > cap) return 0;
  const auto& p = mu.parts();
  std::size_t forced = 0;  // parts equal to 2N+1 must each lose a cell
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    if (p[i] == cap) forced = j - i;
    else if ((j - i) % 2 != 0) return 0;
    i = j;
  }
  return (mu.size() - forced) % 2 == 0 ? 1 : -1;
}

int vertical_strip_coeff_brute(const Partition& mu, unsigned N) {
  const auto& p = mu.parts();
  const std::size_t r = p.size();
  if (r > 24) throw UnsupportedError("vertical_strip_coeff_brute: too many parts");
  int total = 0;
  for (unsigned long mask = 0; mask < (1ul << r); ++mask) {
    std::vector<unsigned> lambda(r);
    bool ok = true;
    for (std::size_t i = 0; i < r; ++i) {
      unsigned nu = (mask >> i) & 1u;
      lambda[i] = p[i] - nu;
      // No two removed cells in one row holds by construction; lambda must
      // stay a partition and fit under 2N.
      if (i > 0 && lambda[i] > lambda[i - 1]) ok = false;
      if (lambda[i] > 2 * N) ok = false;
    }
    if (!ok) continue;
    unsigned size = 0;
    for (unsigned v : lambda) size += v;
    total += (size % 2 == 0) ? 1 : -1;
  }
  return total;
}

}  // namespace secmom::ssyt
