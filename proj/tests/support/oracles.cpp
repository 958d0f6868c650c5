#include "support/oracles.hpp"

#include <map>

namespace couplecheck::support {

namespace {

// Solves M y = rhs for full-column-rank M; nullopt if inconsistent or rank deficient.
std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> aug, std::size_t cols) {
  const std::size_t rows = aug.size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && aug[p][c].is_zero()) ++p;
    if (p == rows) return std::nullopt;  // column dependent on earlier ones
    std::swap(aug[p], aug[r]);
    const Rational inv = Rational(1) / aug[r][c];
    for (auto& v : aug[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][c].is_zero()) continue;
      const Rational f = aug[i][c];
      for (std::size_t k = 0; k <= cols; ++k) aug[i][k] -= f * aug[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!aug[i][cols].is_zero()) return std::nullopt;
  }
  std::vector<Rational> y(cols);
  for (std::size_t i = 0; i < r; ++i) y[pivot_col[i]] = aug[i][cols];
  return y;
}

}  // namespace

bool feasible_by_vertex_enumeration(const LinearSystem& problem) {
  const auto m = problem.rows();
  const auto n = problem.columns();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) cols.push_back(j);
    }
    if (cols.size() > m) continue;
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(cols.size() + 1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) aug[i][k] = problem.constraint_matrix[i][cols[k]];
      aug[i][cols.size()] = problem.rhs[i];
    }
    const auto y = solve_unique(std::move(aug), cols.size());
    if (!y) continue;
    bool nonnegative = true;
    for (const auto& v : *y) nonnegative = nonnegative && v.sign() >= 0;
    if (nonnegative) return true;
  }
  return false;
}

Rational max_deterministic_chsh() {
  Rational best;
  for (int s = 0; s < 16; ++s) {
    const int a[2] = {(s & 1) ? -1 : 1, (s & 2) ? -1 : 1};
    const int b[2] = {(s & 4) ? -1 : 1, (s & 8) ? -1 : 1};
    int sum = 0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) sum += a[i] * b[j];
    }
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) best = max(best, Rational(std::abs(sum - 2 * a[k] * b[l])));
    }
  }
  return best;
}

namespace {

Rational corr(const BinaryTable& t) { return t.pp - t.pm - t.mp + t.mm; }
Rational ea(const BinaryTable& t) { return (t.pp + t.pm) - (t.mp + t.mm); }
Rational eb(const BinaryTable& t) { return (t.pp + t.mp) - (t.pm + t.mm); }

}  // namespace

Rational chsh_from_tables(const std::array<BinaryTable, 4>& tables) {
  // Equivalent form: max over sign patterns with an odd number of minus signs.
  Rational best;
  for (int signs = 0; signs < 16; ++signs) {
    int minus = 0;
    Rational s;
    for (int k = 0; k < 4; ++k) {
      const bool neg = (signs >> k) & 1;
      minus += neg;
      s += neg ? -corr(tables[static_cast<std::size_t>(k)]) : corr(tables[static_cast<std::size_t>(k)]);
    }
    if (minus % 2 == 1) best = max(best, s);
  }
  return best;
}

Rational extended_bound_from_tables(const std::array<BinaryTable, 4>& t) {
  // Order (1,1), (1,2), (2,1), (2,2).
  return Rational(2) + abs(ea(t[0]) - ea(t[1])) + abs(ea(t[2]) - ea(t[3])) + abs(eb(t[0]) - eb(t[2])) +
         abs(eb(t[1]) - eb(t[3]));
}

Rational overlap(const std::vector<std::pair<std::string, Rational>>& d1,
                 const std::vector<std::pair<std::string, Rational>>& d2) {
  std::map<std::string, std::pair<Rational, Rational>> both;
  for (const auto& [v, p] : d1) both[v].first += p;
  for (const auto& [v, p] : d2) both[v].second += p;
  Rational out;
  for (const auto& [v, pq] : both) out += pq.first < pq.second ? pq.first : pq.second;
  return out;
}

}  // namespace couplecheck::support
