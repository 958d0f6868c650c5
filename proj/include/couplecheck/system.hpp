#pragma once

#include "couplecheck/error.hpp"
#include "couplecheck/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace couplecheck {

struct RawSystem;

/// Opaque value label ("+1", "-1", "1".."6").
struct Value {
  std::string label;
  friend auto operator<=>(const Value&, const Value&) = default;
};

/// The "what is measured" label of a random variable.
struct Content {
  std::string id;
  friend auto operator<=>(const Content&, const Content&) = default;
};

/// A context and the contents it measures, in tuple-coordinate order.
struct Context {
  std::string id;
  std::vector<Content> measured;
  friend bool operator==(const Context&, const Context&) = default;

  std::optional<std::size_t> position_of(const Content& content) const;
};

/// A single random variable: one content measured in one context.
struct Observable {
  Content content;
  std::string context;
  friend auto operator<=>(const Observable&, const Observable&) = default;

  std::string name() const { return content.id + "@" + context; }
};

/// Finite distribution over an ordered support. Events are value subsets.
class Distribution {
 public:
  /// Throws Error on duplicate labels, negative masses, or total != 1.
  Distribution(std::vector<Value> support, std::vector<Rational> masses);

  static Distribution point(Value v);
  static Distribution uniform(std::vector<Value> support);
  /// Binary distribution over {"+1", "-1"} with the given P(+1).
  static Distribution binary(const Rational& p_plus);

  const std::vector<Value>& support() const { return support_; }
  const std::vector<Rational>& masses() const { return masses_; }
  std::optional<std::size_t> index_of(const Value& v) const;
  /// Zero for labels outside the support.
  Rational mass(const Value& v) const;
  Rational probability(std::span<const Value> event) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Value> support_;
  std::vector<Rational> masses_;
};

/// Equality in law: every label carries the same mass (support order ignored).
bool same_law(const Distribution& a, const Distribution& b);

/// Joint distribution of all observables of one context. Masses are dense,
/// row-major over the per-coordinate supports (last coordinate fastest).
class Bunch {
 public:
  /// Throws Error on arity/support mismatches, negative mass or bad normalization.
  Bunch(Context context, std::vector<std::vector<Value>> supports, std::vector<Rational> joint);

  const Context& context() const { return context_; }
  std::size_t arity() const { return context_.measured.size(); }
  const std::vector<std::vector<Value>>& supports() const { return supports_; }
  const std::vector<Rational>& joint() const { return joint_; }
  std::size_t atom_count() const { return joint_.size(); }

  std::vector<std::size_t> decode(std::size_t flat) const;
  std::size_t encode(std::span<const std::size_t> indices) const;
  std::vector<Value> labels(std::size_t flat) const;
  /// Zero for tuples naming values outside the supports.
  Rational mass(std::span<const Value> tuple) const;

  friend bool operator==(const Bunch&, const Bunch&) = default;

 private:
  Context context_;
  std::vector<std::vector<Value>> supports_;
  std::vector<Rational> joint_;
};

/// Product of independent distributions, one per measured content.
Bunch product_bunch(Context context, std::span<const Distribution> factors);

/// Sums the joint over every coordinate except `target`.
Distribution marginal(const Bunch& bunch, const Content& target);

struct PairIndependence {
  Content first;
  Content second;
  bool independent;
};

/// Exact factorization check for every pair of measured contents.
std::vector<PairIndependence> product_independence_test(const Bunch& bunch);

/// All observables of one content across distinct contexts.
struct Connection {
  Content content;
  std::vector<Observable> observables;
};

/// A validated context-content system. Contents and contexts are kept in
/// lexicographic id order. Immutable once built.
class System {
 public:
  const std::vector<Content>& contents() const { return contents_; }
  const std::vector<Bunch>& bunches() const { return bunches_; }
  std::vector<Context> contexts() const;

  const Bunch& bunch(std::string_view context) const;
  bool has_content(const Content& content) const;

  /// Contexts in id order, then measured order within each context.
  std::vector<Observable> observables() const;
  const std::vector<Value>& support(const Observable& obs) const;
  Distribution marginal(const Observable& obs) const;

  /// Partition of the observables by content, singletons included.
  std::vector<Connection> connections() const;
  /// Connections spanning at least two contexts.
  std::vector<Connection> shared_connections() const;

  friend bool operator==(const System&, const System&) = default;

 private:
  friend System validate_system(const RawSystem& raw);
  System(std::vector<Content> contents, std::vector<Bunch> bunches)
      : contents_(std::move(contents)), bunches_(std::move(bunches)) {}

  std::vector<Content> contents_;
  std::vector<Bunch> bunches_;
};

// Unvalidated input, as produced by a parser or assembled by hand.

struct RawContext {
  std::string id;
  std::vector<std::string> measured;
  int line = 0;
};

struct RawSupport {
  std::string context;
  std::string content;
  std::vector<std::string> values;
  int line = 0;
};

struct RawAtom {
  std::vector<std::string> tuple;
  Rational mass;
  int line = 0;
};

struct RawBunch {
  std::string context;
  std::vector<RawAtom> atoms;
  int line = 0;
};

struct RawSystem {
  std::vector<std::string> contents;
  int contents_line = 0;
  std::vector<RawContext> contexts;
  std::vector<RawSupport> supports;
  std::vector<RawBunch> bunches;
};

/// Returns the system iff every invariant holds; otherwise throws a
/// ValidationError listing every violation.
System validate_system(const RawSystem& raw);

/// Canonical raw form: contents/contexts sorted, nonzero atoms only.
RawSystem to_raw(const System& system);

/// Builds and validates a system from bunches; contents are inferred.
System make_system(std::vector<Bunch> bunches);

}  // namespace couplecheck
