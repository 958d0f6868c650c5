#pragma once

#include "couplecheck/lp.hpp"
#include "couplecheck/system.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace couplecheck {

/// A single joint distribution over every observable of a system.
///
/// Atom keys are support-index tuples, one coordinate per observable in
/// System::observables() order. Only atoms of nonzero mass are stored.
struct Coupling {
  System system;
  std::vector<Observable> observables;
  std::map<std::vector<std::size_t>, Rational> atoms;

  std::vector<Value> labels(const std::vector<std::size_t>& atom) const;
  /// Zero for tuples that are not atoms.
  Rational mass(std::span<const Value> tuple) const;
  Rational total_mass() const;
};

/// Probability that every coordinate of `content`'s connection shows the same label.
Rational equality_probability(const Coupling& coupling, const Content& content);

struct ConnectionTarget {
  Content content;
  Rational required_equality_probability;
};

/// Product of the bunch masses across contexts.
Coupling independent_coupling(const System& system);

/// Diagonal coupling of distributions with one common law. The coupled
/// system has one content "q" measured alone in contexts "c1".."ck".
/// Throws DistributionsDiffer when the laws are not identical.
Coupling identity_coupling(std::span<const Distribution> connection_dists);

/// Diagonal coupling of a system whose contexts each measure one content.
Coupling identity_coupling(const System& system);

/// Couples `d` (content "X", context "X") with its image under `map`
/// (content "Y", context "Y"). Throws NotABijection if `map` repeats an image.
Coupling deterministic_coupling(const Distribution& d, const std::function<Value(const Value&)>& map);

/// Sum over labels of min(d1(v), d2(v)).
Rational max_equality_probability(const Distribution& d1, const Distribution& d2);

/// The equality-constrained coupling problem as a LinearSystem, one unknown
/// per atom of the full observable product, in lexicographic
/// (observable order, support order). Targets are not range-checked here.
LinearSystem coupling_linear_system(const System& system, std::span<const ConnectionTarget> targets);

/// Some coupling in which each target connection shows equal values with
/// exactly the required probability, or nullopt if none exists.
std::optional<Coupling> couple_with_equality_targets(const System& system, std::span<const ConnectionTarget> targets);

/// Targets for every shared connection, each at its maximal attainable value.
/// Throws ConnectionArityUnsupported for connections spanning 3+ contexts.
std::vector<ConnectionTarget> maximal_targets(const System& system);

std::optional<Coupling> maximally_connected_coupling(const System& system);

struct CouplingViolation {
  std::string context;
  std::vector<Value> tuple;
  Rational expected;
  Rational actual;
};

struct CouplingReport {
  bool ok = true;
  std::vector<CouplingViolation> violations;
  std::vector<std::string> problems;  // normalization / negativity / shape
};

/// Checks that every bunch is reproduced exactly by marginalizing the atoms.
CouplingReport verify_coupling(const Coupling& coupling);

}  // namespace couplecheck
