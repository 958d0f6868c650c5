#include "couplecheck/analysis.hpp"
#include "couplecheck/coupling.hpp"
#include "couplecheck/scenarios.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace couplecheck;

namespace {

std::vector<Value> faces() {
  std::vector<Value> out;
  for (int f = 1; f <= 6; ++f) out.push_back({std::to_string(f)});
  return out;
}

Distribution fair_die() { return Distribution::uniform(faces()); }

// Two fair dice, each rolled alone in its own context.
System two_dice() {
  return make_system({Bunch(Context{"left", {Content{"X"}}}, {faces()}, fair_die().masses()),
                      Bunch(Context{"right", {Content{"Y"}}}, {faces()}, fair_die().masses())});
}

std::vector<std::pair<std::string, Rational>> as_pairs(const Distribution& d) {
  std::vector<std::pair<std::string, Rational>> out;
  for (std::size_t i = 0; i < d.support().size(); ++i) out.emplace_back(d.support()[i].label, d.masses()[i]);
  return out;
}

void expect_sound(const Coupling& c) {
  const auto report = verify_coupling(c);
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.violations.empty());
  EXPECT_EQ(c.total_mass(), Rational(1));
  for (const auto& [atom, m] : c.atoms) EXPECT_GT(m, Rational(0));
}

}  // namespace

TEST(IndependentCoupling, TwoFairDice) {
  const auto c = independent_coupling(two_dice());
  ASSERT_EQ(c.atoms.size(), 36u);
  for (const auto& [atom, m] : c.atoms) EXPECT_EQ(m, Rational(1, 36));
  expect_sound(c);
}

TEST(IndependentCoupling, SingleContextIsTheBunch) {
  const auto system = build(ScenarioId::FairDieAB);
  const auto c = independent_coupling(system);
  const auto& b = system.bunch("roll");
  for (std::size_t flat = 0; flat < b.atom_count(); ++flat) {
    EXPECT_EQ(c.mass(b.labels(flat)), b.joint()[flat]);
  }
  expect_sound(c);
}

TEST(IndependentCoupling, PointMasses) {
  const auto system = make_system({Bunch(Context{"c1", {Content{"X"}}}, {{Value{"a"}}}, {Rational(1)}),
                                   Bunch(Context{"c2", {Content{"Y"}}}, {{Value{"b"}}}, {Rational(1)})});
  const auto c = independent_coupling(system);
  ASSERT_EQ(c.atoms.size(), 1u);
  EXPECT_EQ(c.labels(c.atoms.begin()->first), (std::vector<Value>{{"a"}, {"b"}}));
}

TEST(IdentityCoupling, TwoFairDiceDiagonal) {
  const std::array dice{fair_die(), fair_die()};
  const auto c = identity_coupling(dice);
  ASSERT_EQ(c.atoms.size(), 6u);
  for (const auto& [atom, m] : c.atoms) {
    EXPECT_EQ(atom[0], atom[1]);
    EXPECT_EQ(m, Rational(1, 6));
  }
  EXPECT_EQ(equality_probability(c, Content{"q"}), Rational(1));
  expect_sound(c);
}

TEST(IdentityCoupling, DifferentLawsRejected) {
  const std::array d{Distribution::binary(Rational(7, 10)), Distribution::binary(Rational(1, 2))};
  try {
    identity_coupling(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DistributionsDiffer);
  }
}

TEST(IdentityCoupling, SingleDistribution) {
  const std::array d{Distribution::binary(Rational(3, 8))};
  const auto c = identity_coupling(d);
  EXPECT_EQ(c.mass(std::vector<Value>{{"+1"}}), Rational(3, 8));
  EXPECT_EQ(c.mass(std::vector<Value>{{"-1"}}), Rational(5, 8));
}

TEST(IdentityCoupling, LuceCitiesDiffer) {
  EXPECT_THROW(identity_coupling(build(ScenarioId::LuceTwoCities)), Error);
}

TEST(DeterministicCoupling, AnticorrelatedDice) {
  const auto c = deterministic_coupling(fair_die(), [](const Value& v) {
    return Value{std::to_string(7 - std::stoi(v.label))};
  });
  ASSERT_EQ(c.atoms.size(), 6u);
  for (const auto& [atom, m] : c.atoms) {
    const auto labels = c.labels(atom);
    EXPECT_EQ(std::stoi(labels[0].label) + std::stoi(labels[1].label), 7);
    EXPECT_EQ(m, Rational(1, 6));
  }
  expect_sound(c);
}

TEST(DeterministicCoupling, IdentityMapIsDiagonal) {
  const auto c = deterministic_coupling(fair_die(), [](const Value& v) { return v; });
  for (const auto& [atom, m] : c.atoms) EXPECT_EQ(c.labels(atom)[0], c.labels(atom)[1]);
}

TEST(DeterministicCoupling, PointMassIsEveryKindOfCoupling) {
  const auto d = Distribution::point({"3"});
  const auto flip = deterministic_coupling(d, [](const Value& v) { return Value{std::to_string(7 - std::stoi(v.label))}; });
  const auto same = deterministic_coupling(d, [](const Value& v) { return v; });
  ASSERT_EQ(flip.atoms.size(), 1u);
  ASSERT_EQ(same.atoms.size(), 1u);
  EXPECT_EQ(flip.atoms.begin()->second, Rational(1));
  EXPECT_EQ(independent_coupling(flip.system).atoms, flip.atoms);
}

TEST(DeterministicCoupling, NotABijection) {
  try {
    deterministic_coupling(fair_die(), [](const Value&) { return Value{"1"}; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotABijection);
  }
}

TEST(MaxEqualityProbability, Examples) {
  EXPECT_EQ(max_equality_probability(Distribution::binary(Rational(7, 10)), Distribution::binary(Rational(1, 2))),
            Rational(4, 5));
  EXPECT_EQ(max_equality_probability(fair_die(), fair_die()), Rational(1));
  EXPECT_EQ(max_equality_probability(Distribution::point({"a"}), Distribution::point({"b"})), Rational(0));
}

TEST(MaxEqualityProbability, MatchesOverlapOracle) {
  support::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = support::grid_value(rng, 0, 64);
    const auto q = support::grid_value(rng, 0, 64);
    const auto d1 = Distribution::binary(p);
    const auto d2 = Distribution::binary(q);
    EXPECT_EQ(max_equality_probability(d1, d2), support::overlap(as_pairs(d1), as_pairs(d2)));
    EXPECT_EQ(max_equality_probability(d1, d2), Rational(1) - abs(p - q));
  }
}

TEST(CoupleWithTargets, BernoulliHalvesEqualWithCertainty) {
  const std::array d{Distribution::binary(Rational(1, 2)), Distribution::binary(Rational(1, 2))};
  const auto system = identity_coupling(d).system;
  const std::vector<ConnectionTarget> targets{{Content{"q"}, Rational(1)}};
  const auto c = couple_with_equality_targets(system, targets);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->atoms.size(), 2u);
  EXPECT_EQ(c->mass(std::vector<Value>{{"+1"}, {"+1"}}), Rational(1, 2));
  EXPECT_EQ(c->mass(std::vector<Value>{{"-1"}, {"-1"}}), Rational(1, 2));
}

TEST(CoupleWithTargets, PrBoxAllOnesInfeasible) {
  const auto system = build(ScenarioId::PrBox);
  std::vector<ConnectionTarget> targets;
  for (const auto& c : system.contents()) targets.push_back({c, Rational(1)});
  EXPECT_FALSE(couple_with_equality_targets(system, targets).has_value());
}

TEST(CoupleWithTargets, DeterministicSystemHasOnePointCoupling) {
  const auto one = [](const char* id, const char* a, const char* b) {
    return Bunch(Context{id, {Content{a}, Content{b}}}, {{Value{"+1"}, Value{"-1"}}, {Value{"+1"}, Value{"-1"}}},
                 {Rational(0), Rational(1), Rational(0), Rational(0)});
  };
  const auto system = make_system({one("11", "A1", "B1"), one("12", "A1", "B2"), one("21", "A2", "B1"), one("22", "A2", "B2")});
  std::vector<ConnectionTarget> targets;
  for (const auto& c : system.contents()) targets.push_back({c, Rational(1)});
  const auto c = couple_with_equality_targets(system, targets);
  ASSERT_TRUE(c.has_value());
  ASSERT_EQ(c->atoms.size(), 1u);
  EXPECT_EQ(c->atoms.begin()->second, Rational(1));
  expect_sound(*c);
}

TEST(CoupleWithTargets, UniformProductHasAllOnesCoupling) {
  const auto system = build(ScenarioId::EprUniform);
  std::vector<ConnectionTarget> targets;
  for (const auto& c : system.contents()) targets.push_back({c, Rational(1)});
  const auto c = couple_with_equality_targets(system, targets);
  ASSERT_TRUE(c.has_value());
  expect_sound(*c);
  for (const auto& content : system.contents()) EXPECT_EQ(equality_probability(*c, content), Rational(1));
}

TEST(CoupleWithTargets, RejectsBadTargets) {
  const auto system = build(ScenarioId::EprUniform);
  const std::vector<ConnectionTarget> unknown{{Content{"Z"}, Rational(1)}};
  const std::vector<ConnectionTarget> too_big{{Content{"A1"}, Rational(3, 2)}};
  try {
    couple_with_equality_targets(system, unknown);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownConnection);
  }
  try {
    couple_with_equality_targets(system, too_big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTarget);
  }
}

TEST(CoupleWithTargets, EveryTargetBelowTheMaximumIsAttainable) {
  const std::array d{Distribution::binary(Rational(7, 10)), Distribution::binary(Rational(1, 2))};
  const auto system = make_system({Bunch(Context{"x", {Content{"q"}}}, {d[0].support()}, d[0].masses()),
                                   Bunch(Context{"y", {Content{"q"}}}, {d[1].support()}, d[1].masses())});
  // P(equal) = 2 P(++) - 1/5 with P(++) in [1/5, 1/2].
  for (int k = 0; k <= 20; ++k) {
    const Rational t(k, 20);
    const std::vector<ConnectionTarget> targets{{Content{"q"}, t}};
    const auto c = couple_with_equality_targets(system, targets);
    EXPECT_EQ(c.has_value(), t >= Rational(1, 5) && t <= Rational(4, 5)) << t;
    if (c) {
      expect_sound(*c);
      EXPECT_EQ(equality_probability(*c, Content{"q"}), t);
    }
  }
}

TEST(MaximalCoupling, SingleContextIsTheBunch) {
  const auto system = build(ScenarioId::FairDieAB);
  const auto c = maximally_connected_coupling(system);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->atoms, independent_coupling(system).atoms);
}

TEST(MaximalCoupling, TsirelsonStandInsHaveNone) {
  for (const auto& e : {Rational(7, 10), Rational(17, 24)}) {
    const auto system = build(ScenarioId::TsirelsonRational, {{"c", e}});
    EXPECT_FALSE(maximally_connected_coupling(system).has_value()) << e;
  }
}

TEST(MaximalCoupling, InconsistentlyConnectedQuestionOrder) {
  const auto system = build(ScenarioId::QuestionOrderShared,
                            {{"ab_pp", Rational(1, 2)}, {"ab_pm", Rational(1, 4)}, {"ab_mp", Rational(0)}, {"ab_mm", Rational(1, 4)}});
  const auto c = maximally_connected_coupling(system);
  ASSERT_TRUE(c.has_value());
  expect_sound(*c);
  // P(a=+1) is 3/4 then 1/2; P(b=+1) is 1/2 both times.
  EXPECT_EQ(equality_probability(*c, Content{"a"}), Rational(3, 4));
  EXPECT_EQ(equality_probability(*c, Content{"b"}), Rational(1));
}

TEST(MaximalCoupling, LargeConnectionsUnsupported) {
  const auto d = Distribution::binary(Rational(1, 2));
  const auto system = make_system({Bunch(Context{"x", {Content{"q"}}}, {d.support()}, d.masses()),
                                   Bunch(Context{"y", {Content{"q"}}}, {d.support()}, d.masses()),
                                   Bunch(Context{"z", {Content{"q"}}}, {d.support()}, d.masses())});
  try {
    maximally_connected_coupling(system);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConnectionArityUnsupported);
  }
  // Explicit targets still work for three-way connections.
  const std::vector<ConnectionTarget> targets{{Content{"q"}, Rational(1)}};
  EXPECT_TRUE(couple_with_equality_targets(system, targets).has_value());
}

TEST(VerifyCoupling, DetectsTamperedAtoms) {
  auto c = independent_coupling(two_dice());
  auto it = c.atoms.begin();
  it->second = Rational(1, 18);
  std::next(it)->second = Rational(0);
  const auto report = verify_coupling(c);
  EXPECT_FALSE(report.ok);
  EXPECT_FALSE(report.violations.empty());
}

TEST(VerifyCoupling, DetectsNegativeMass) {
  auto c = independent_coupling(two_dice());
  c.atoms.begin()->second = Rational(-1, 36);
  EXPECT_FALSE(verify_coupling(c).ok);
}

TEST(CouplingLinearSystem, ShapeAndNames) {
  const auto system = build(ScenarioId::EprUniform);
  const std::vector<ConnectionTarget> targets{{Content{"A1"}, Rational(1)}};
  const auto lp = coupling_linear_system(system, targets);
  EXPECT_EQ(lp.columns(), 256u);  // 8 binary observables
  EXPECT_EQ(lp.rows(), 4u * 4u + 1u);
  EXPECT_EQ(lp.variable_names.front(), "+1 +1 +1 +1 +1 +1 +1 +1");
}

// Coupling witnesses on random 2x2 systems are always sound.
TEST(CouplingProperties, WitnessesAreSound) {
  support::Rng rng(31);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = cyclic_four_from_tables(support::random_tables(rng));
    const auto c = maximally_connected_coupling(s.system());
    if (!c) continue;
    ++found;
    expect_sound(*c);
    for (const auto& conn : s.system().shared_connections()) {
      const auto& o = conn.observables;
      EXPECT_EQ(equality_probability(*c, conn.content),
                max_equality_probability(s.system().marginal(o[0]), s.system().marginal(o[1])));
    }
  }
  EXPECT_GT(found, 10);
}

// Renaming values consistently does not change feasibility.
TEST(CouplingProperties, RelabelingEquivariance) {
  support::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = cyclic_four_from_tables(support::random_tables(rng));
    auto raw = to_raw(s.system());
    for (auto& sup : raw.supports) {
      for (auto& v : sup.values) v = v == "+1" ? "yes" : "no";
    }
    for (auto& b : raw.bunches) {
      for (auto& a : b.atoms) {
        for (auto& v : a.tuple) v = v == "+1" ? "yes" : "no";
      }
    }
    const auto renamed = validate_system(raw);
    EXPECT_EQ(maximally_connected_coupling(s.system()).has_value(), maximally_connected_coupling(renamed).has_value());
  }
}
