#include "couplecheck/lp.hpp"

#include "couplecheck/error.hpp"

#include <stdexcept>

namespace couplecheck {

std::size_t LinearSystem::columns() const {
  return constraint_matrix.empty() ? 0 : constraint_matrix.front().size();
}

namespace {

void check_dimensions(const LinearSystem& p) {
  const auto m = p.rows();
  const auto n = p.columns();
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::DimensionMismatch, "linear system needs at least one row and one column");
  }
  if (p.rhs.size() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                "rhs has " + std::to_string(p.rhs.size()) + " entries for " + std::to_string(m) + " rows");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (p.constraint_matrix[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                                    std::to_string(p.constraint_matrix[i].size()) +
                                                    " columns, expected " + std::to_string(n));
    }
  }
  if (!p.variable_names.empty() && p.variable_names.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "variable_names does not match the column count");
  }
}

// Phase-1 tableau. Artificial columns are never stored: an artificial that
// leaves the basis is barred from re-entering, so its column is dead.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& p) : m_(p.rows()), n_(p.columns()), rows_(m_), basis_(m_), cost_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = p.rhs[i].sign() < 0;
      auto& row = rows_[i];
      row.resize(n_ + 1);
      for (std::size_t j = 0; j < n_; ++j) {
        row[j] = p.constraint_matrix[i][j].raw();
        if (flip) mpq_neg(row[j].get_mpq_t(), row[j].get_mpq_t());
      }
      row[n_] = p.rhs[i].raw();
      if (flip) mpq_neg(row[n_].get_mpq_t(), row[n_].get_mpq_t());
      basis_[i] = n_ + i;
      // Reduced cost of column j is -(sum of column j); the rhs slot holds -w.
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= row[j];
    }
  }

  /// Runs Bland's rule to optimality; returns the pivot count.
  std::size_t run() {
    std::size_t pivots = 0;
    while (sgn(cost_[n_]) != 0) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) break;

      std::size_t leave = m_;
      mpq_class best;
      mpq_class ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        ratio = rows_[i][n_] / rows_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw std::logic_error("phase-1 objective unbounded below");
      pivot(leave, enter);
      ++pivots;
    }
    return pivots;
  }

  bool feasible() const { return sgn(cost_[n_]) == 0; }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = Rational(rows_[i][n_]);
    }
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    auto& prow = rows_[r];
    const mpq_class inv = 1 / prow[s];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    mpq_class factor;
    mpq_class tmp;
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (sgn(row[s]) == 0) return;
      factor = row[s];
      for (const auto j : nz) {
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
      }
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(cost_);
    basis_[r] = s;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<mpq_class> cost_;
};

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& problem) {
  check_dimensions(problem);
  Tableau tableau(problem);
  FeasibilityResult result;
  result.pivots = tableau.run();
  if (tableau.feasible()) {
    result.verdict = Verdict::Feasible;
    result.witness = tableau.solution();
  }
  return result;
}

bool satisfies(const LinearSystem& problem, const std::vector<Rational>& x) {
  if (x.size() != problem.columns()) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  for (std::size_t i = 0; i < problem.rows(); ++i) {
    Rational lhs;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!x[j].is_zero()) lhs += problem.constraint_matrix[i][j] * x[j];
    }
    if (lhs != problem.rhs[i]) return false;
  }
  return true;
}

}  // namespace couplecheck
