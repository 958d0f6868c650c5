#pragma once

#include "couplecheck/system.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace couplecheck {

enum class ScenarioId {
  FairDieAB,
  RiggedDieAB,
  TwoDiceMarked,
  LuceTwoCities,
  SurveyFourContexts,
  SurveyPairedContexts,
  QuestionOrderShared,
  QuestionOrderSplit,
  EprUniform,
  PrBox,
  TsirelsonRational,
};

std::span<const ScenarioId> all_scenarios();
std::string_view to_string(ScenarioId id);
/// Throws Error(UnknownScenario).
ScenarioId parse_scenario_id(std::string_view name);

using ScenarioParams = std::map<std::string, Rational>;

struct ParameterSpec {
  std::string name;
  Rational default_value;
  Rational lower;
  Rational upper;
  std::string meaning;
};

std::vector<ParameterSpec> scenario_parameters(ScenarioId id);
std::string_view scenario_summary(ScenarioId id);

/// Builds the preset. Unknown or out-of-range parameters throw BadParameter.
System build(ScenarioId id, const ScenarioParams& params = {});

}  // namespace couplecheck
