#pragma once

#include "couplecheck/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace couplecheck {

/// Equality constraints A x = b over x >= 0, dense.
struct LinearSystem {
  std::vector<std::vector<Rational>> constraint_matrix;  // m rows x n columns
  std::vector<Rational> rhs;                             // length m
  std::vector<std::string> variable_names;               // length n, may be empty

  std::size_t rows() const { return constraint_matrix.size(); }
  std::size_t columns() const;
};

enum class Verdict { Feasible, Infeasible };

struct FeasibilityResult {
  Verdict verdict = Verdict::Infeasible;
  std::optional<std::vector<Rational>> witness;  // present iff Feasible
  std::size_t pivots = 0;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

/// Decides whether {x >= 0 : A x = b} is nonempty.
///
/// Phase-1 simplex over exact rationals: rows are sign-normalized so b >= 0,
/// one artificial variable per row seeds the basis, and the sum of the
/// artificials is driven down under Bland's smallest-index rule, which
/// cannot cycle. Redundant or contradictory rows need no preprocessing.
/// Throws Error(DimensionMismatch) on ragged or empty input.
FeasibilityResult solve_feasibility(const LinearSystem& problem);

/// True iff x >= 0 componentwise and A x = b exactly.
bool satisfies(const LinearSystem& problem, const std::vector<Rational>& x);

}  // namespace couplecheck
