#pragma once

#include "couplecheck/coupling.hpp"
#include "couplecheck/system.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace couplecheck {

/// Joint masses of (A, B) over {+1, -1}^2 for one context.
struct BinaryTable {
  Rational pp;  // A=+1, B=+1
  Rational pm;  // A=+1, B=-1
  Rational mp;  // A=-1, B=+1
  Rational mm;  // A=-1, B=-1

  friend bool operator==(const BinaryTable&, const BinaryTable&) = default;
};

/// A 2x2 design: contents A1, A2 and B1, B2, one context per pair (Ai, Bj),
/// every observable binary over {+1, -1}.
///
/// The A/B split is recovered from the context graph: the A side is the
/// bipartition class holding the lexicographically smallest content, and
/// indices follow id order within each side.
class CyclicFourSystem {
 public:
  /// Throws Error(StructuralMismatch) with a human-readable reason.
  static CyclicFourSystem from_system(System system);

  const System& system() const { return system_; }
  const Content& a(int i) const { return a_[i - 1]; }
  const Content& b(int j) const { return b_[j - 1]; }
  const std::string& context(int i, int j) const { return context_[i - 1][j - 1]; }
  const BinaryTable& table(int i, int j) const { return table_[i - 1][j - 1]; }

  /// E[A_i B_j] in context (i, j).
  Rational correlation(int i, int j) const;
  /// Distribution of A_i in context (i, j).
  Distribution a_marginal(int i, int j) const;
  /// Distribution of B_j in context (i, j).
  Distribution b_marginal(int i, int j) const;

 private:
  CyclicFourSystem(System system) : system_(std::move(system)) {}

  System system_;
  std::array<Content, 2> a_;
  std::array<Content, 2> b_;
  std::array<std::array<std::string, 2>, 2> context_;
  std::array<std::array<BinaryTable, 2>, 2> table_;
};

/// Builds contents A1 A2 B1 B2 and contexts "11" "12" "21" "22" from four
/// tables given in the order (1,1), (1,2), (2,1), (2,2).
CyclicFourSystem cyclic_four_from_tables(const std::array<BinaryTable, 4>& tables);

/// mass(+1) - mass(-1). Throws NonBinarySupport unless the support is {+1, -1}.
Rational expectation(const Distribution& d);

struct ConnectionDetail {
  Content content;
  std::string first_context;
  std::string second_context;
  Rational first_p_plus;
  Rational second_p_plus;
  bool consistent = false;
};

struct MarginalSelectivity {
  bool holds = false;
  std::vector<ConnectionDetail> connections;  // A1, A2, B1, B2
};

MarginalSelectivity marginal_selectivity_check(const CyclicFourSystem& s);

/// max over (k,l) of |sum_ij E[A_i B_j] - 2 E[A_k B_l]|.
Rational chsh_value(const CyclicFourSystem& s);

/// 2 + sum_i |E[A_i^{i1}] - E[A_i^{i2}]| + sum_j |E[B_j^{1j}] - E[B_j^{2j}]|.
Rational extended_bound(const CyclicFourSystem& s);

struct ExtendedCheck {
  bool noncontextual = false;
  Rational lhs;
  Rational bound;
};

ExtendedCheck extended_noncontextuality_check(const CyclicFourSystem& s);

/// True iff a maximally connected coupling exists.
bool is_noncontextual_lp(const CyclicFourSystem& s);

/// Marginal selectivity and CHSH <= 2.
bool selective_influences_check(const CyclicFourSystem& s);

/// Existence of a coupling in which all four connections agree with probability 1.
bool selective_influences_lp(const CyclicFourSystem& s);

/// Convex-mixture test against the 16 deterministic assignments of +-1 to
/// (A1, A2, B1, B2). Throws RequiresMarginalSelectivity when it fails.
bool brute_force_oracle(const CyclicFourSystem& s);

struct AnalysisReport {
  MarginalSelectivity marginal_selectivity;
  Rational chsh_value;
  bool chsh_satisfied = false;
  Rational extended_bound;
  bool noncontextual_closed_form = false;
  bool noncontextual_lp = false;
  bool selective_influences = false;
  bool selective_influences_lp = false;
  std::optional<bool> brute_force;  // only under marginal selectivity
  bool oracle_agreement = false;
  std::optional<Coupling> maximal_coupling;

  bool noncontextual() const { return noncontextual_lp; }
};

AnalysisReport analyze(const CyclicFourSystem& s);

/// `key=value` lines in a fixed key order; fractions only.
std::string format_machine(const AnalysisReport& report);
std::string format_text(const AnalysisReport& report);

}  // namespace couplecheck
