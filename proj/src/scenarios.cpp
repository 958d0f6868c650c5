#include "couplecheck/scenarios.hpp"

#include <algorithm>
#include <array>

namespace couplecheck {

namespace {

constexpr std::array kAll{
    ScenarioId::FairDieAB,          ScenarioId::RiggedDieAB,         ScenarioId::TwoDiceMarked,
    ScenarioId::LuceTwoCities,      ScenarioId::SurveyFourContexts,  ScenarioId::SurveyPairedContexts,
    ScenarioId::QuestionOrderShared, ScenarioId::QuestionOrderSplit, ScenarioId::EprUniform,
    ScenarioId::PrBox,              ScenarioId::TsirelsonRational,
};

const std::vector<Value> kSigns{{"+1"}, {"-1"}};

std::vector<Value> die_faces() {
  std::vector<Value> faces;
  for (int f = 1; f <= 6; ++f) faces.push_back({std::to_string(f)});
  return faces;
}

Context context(std::string id, std::initializer_list<const char*> measured) {
  Context c{std::move(id), {}};
  for (const auto* m : measured) c.measured.push_back({m});
  return c;
}

// A = outcome even, B = outcome exceeds 3, both coded 1/0, from die face masses.
System die_ab(const std::array<Rational, 6>& face_mass) {
  // joint over (A, B) with supports {1, 0}: [11, 10, 01, 00]
  std::vector<Rational> joint(4);
  for (int face = 1; face <= 6; ++face) {
    const bool even = face % 2 == 0;
    const bool high = face > 3;
    joint[(even ? 0 : 2) + (high ? 0 : 1)] += face_mass[static_cast<std::size_t>(face - 1)];
  }
  const std::vector<Value> bits{{"1"}, {"0"}};
  return make_system({Bunch(context("roll", {"A", "B"}), {bits, bits}, std::move(joint))});
}

Bunch signed_pair(std::string id, const char* first, const char* second, const Rational& correlation) {
  const Rational same = (Rational(1) + correlation) / Rational(4);
  const Rational diff = (Rational(1) - correlation) / Rational(4);
  return Bunch(context(std::move(id), {first, second}), {kSigns, kSigns}, {same, diff, diff, same});
}

Bunch signed_joint(std::string id, const char* first, const char* second, const ScenarioParams& p,
                   const std::string& prefix) {
  std::vector<Rational> joint{p.at(prefix + "_pp"), p.at(prefix + "_pm"), p.at(prefix + "_mp"),
                              p.at(prefix + "_mm")};
  return Bunch(context(std::move(id), {first, second}), {kSigns, kSigns}, std::move(joint));
}

System correlated_square(const char* a1, const char* a2, const char* b1, const char* b2,
                         const std::array<Rational, 4>& e, bool compact_ids) {
  auto id = [&](const char* a, const char* b, const char* short_id) {
    return compact_ids ? std::string(short_id) : std::string(a) + b;
  };
  return make_system({signed_pair(id(a1, b1, "11"), a1, b1, e[0]), signed_pair(id(a1, b2, "12"), a1, b2, e[1]),
                      signed_pair(id(a2, b1, "21"), a2, b1, e[2]), signed_pair(id(a2, b2, "22"), a2, b2, e[3])});
}

std::vector<ParameterSpec> correlation_params() {
  std::vector<ParameterSpec> out;
  for (const char* name : {"e11", "e12", "e21", "e22"}) {
    out.push_back({name, Rational(0), Rational(-1), Rational(1),
                   std::string("E[A B] in context ") + (name + 1) + ", marginals uniform"});
  }
  return out;
}

std::vector<ParameterSpec> order_params() {
  std::vector<ParameterSpec> out;
  for (const char* ctx : {"ab", "ba"}) {
    for (const char* cell : {"pp", "pm", "mp", "mm"}) {
      out.push_back({std::string(ctx) + "_" + cell, Rational(1, 4), Rational(0), Rational(1),
                     std::string("joint mass of cell ") + cell + " when the order is " + ctx});
    }
  }
  return out;
}

ScenarioParams resolve(ScenarioId id, const ScenarioParams& given) {
  const auto specs = scenario_parameters(id);
  ScenarioParams out;
  for (const auto& s : specs) out[s.name] = s.default_value;
  for (const auto& [name, value] : given) {
    const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParameterSpec& s) { return s.name == name; });
    if (it == specs.end()) {
      throw Error(ErrorCode::BadParameter, "scenario " + std::string(to_string(id)) + " has no parameter '" + name + "'");
    }
    if (value < it->lower || value > it->upper) {
      throw Error(ErrorCode::BadParameter, "parameter '" + name + "' = " + value.str() + " outside [" +
                                               it->lower.str() + ", " + it->upper.str() + "]");
    }
    out[name] = value;
  }
  return out;
}

System build_resolved(ScenarioId id, const ScenarioParams& p) {
  switch (id) {
    case ScenarioId::FairDieAB: {
      std::array<Rational, 6> faces;
      faces.fill(Rational(1, 6));
      return die_ab(faces);
    }
    case ScenarioId::RiggedDieAB:
      return die_ab({Rational(0), Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(0)});
    case ScenarioId::TwoDiceMarked: {
      const std::array dice{Distribution::uniform(die_faces()), Distribution::uniform(die_faces())};
      return make_system({product_bunch(context("trial", {"Left", "Right"}), dice)});
    }
    case ScenarioId::LuceTwoCities: {
      const std::vector<Value> bits{{"1"}, {"0"}};
      auto single = [&](const char* ctx, const char* content, const Rational& p1) {
        return Bunch(context(ctx, {content}), {bits}, {p1, Rational(1) - p1});
      };
      return make_system({single("irvine-tuesday", "A", p.at("p_irvine")),
                          single("lafayette-friday", "B", p.at("p_lafayette"))});
    }
    case ScenarioId::SurveyFourContexts: {
      std::vector<Bunch> bunches;
      for (const char* q : {"a1", "a2", "b1", "b2"}) {
        const auto& p1 = p.at(std::string("p_") + q);
        bunches.emplace_back(context(q, {q}), std::vector<std::vector<Value>>{kSigns}, std::vector{p1, Rational(1) - p1});
      }
      return make_system(std::move(bunches));
    }
    case ScenarioId::SurveyPairedContexts:
      return correlated_square("a1", "a2", "b1", "b2", {p.at("e11"), p.at("e12"), p.at("e21"), p.at("e22")}, false);
    case ScenarioId::QuestionOrderShared:
      return make_system({signed_joint("a->b", "a", "b", p, "ab"), signed_joint("b->a", "a", "b", p, "ba")});
    case ScenarioId::QuestionOrderSplit:
      return make_system({signed_joint("a1->b2", "a1", "b2", p, "ab"), signed_joint("b1->a2", "a2", "b1", p, "ba")});
    case ScenarioId::EprUniform:
      return correlated_square("A1", "A2", "B1", "B2", {p.at("e11"), p.at("e12"), p.at("e21"), p.at("e22")}, true);
    case ScenarioId::PrBox:
      return correlated_square("A1", "A2", "B1", "B2", {Rational(1), Rational(1), Rational(1), Rational(-1)}, true);
    case ScenarioId::TsirelsonRational: {
      const auto& c = p.at("c");
      return correlated_square("A1", "A2", "B1", "B2", {c, c, c, -c}, true);
    }
  }
  throw Error(ErrorCode::UnknownScenario, "unhandled scenario");
}

}  // namespace

std::span<const ScenarioId> all_scenarios() { return kAll; }

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::FairDieAB: return "fair-die-AB";
    case ScenarioId::RiggedDieAB: return "rigged-die-AB";
    case ScenarioId::TwoDiceMarked: return "two-dice-marked";
    case ScenarioId::LuceTwoCities: return "luce-two-cities";
    case ScenarioId::SurveyFourContexts: return "survey-four-contexts";
    case ScenarioId::SurveyPairedContexts: return "survey-paired-contexts";
    case ScenarioId::QuestionOrderShared: return "question-order-shared";
    case ScenarioId::QuestionOrderSplit: return "question-order-split";
    case ScenarioId::EprUniform: return "epr-uniform";
    case ScenarioId::PrBox: return "pr-box";
    case ScenarioId::TsirelsonRational: return "tsirelson-rational";
  }
  return "unknown";
}

ScenarioId parse_scenario_id(std::string_view name) {
  for (const auto id : kAll) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::UnknownScenario, "no scenario named '" + std::string(name) + "'");
}

std::vector<ParameterSpec> scenario_parameters(ScenarioId id) {
  switch (id) {
    case ScenarioId::LuceTwoCities:
      return {{"p_irvine", Rational(7, 10), Rational(0), Rational(1), "P(A=1) for the Irvine die"},
              {"p_lafayette", Rational(1, 2), Rational(0), Rational(1), "P(B=1) for the Lafayette die"}};
    case ScenarioId::SurveyFourContexts: {
      std::vector<ParameterSpec> out;
      for (const char* q : {"a1", "a2", "b1", "b2"}) {
        out.push_back({std::string("p_") + q, Rational(1, 2), Rational(0), Rational(1),
                       std::string("P(+1) for question ") + q});
      }
      return out;
    }
    case ScenarioId::SurveyPairedContexts:
    case ScenarioId::EprUniform:
      return correlation_params();
    case ScenarioId::QuestionOrderShared:
    case ScenarioId::QuestionOrderSplit:
      return order_params();
    case ScenarioId::TsirelsonRational:
      return {{"c", Rational(7, 10), Rational(0), Rational(1),
               "correlation magnitude; E = c in 11, 12, 21 and -c in 22 (rational stand-in)"}};
    default:
      return {};
  }
}

std::string_view scenario_summary(ScenarioId id) {
  switch (id) {
    case ScenarioId::FairDieAB: return "one fair die; A = even, B = exceeds 3, observed at every roll";
    case ScenarioId::RiggedDieAB: return "one die with masses (0, 1/4, 1/4, 1/4, 1/4, 0); A = even, B = exceeds 3";
    case ScenarioId::TwoDiceMarked: return "Left and Right fair dice rolled together in one trial";
    case ScenarioId::LuceTwoCities: return "two dice rolled in different places and times; no pairing";
    case ScenarioId::SurveyFourContexts: return "four questions, each asked alone";
    case ScenarioId::SurveyPairedContexts: return "husband/wife answers paired into four (a_i, b_j) contexts";
    case ScenarioId::QuestionOrderShared: return "questions a and b asked in either order; same objects";
    case ScenarioId::QuestionOrderSplit: return "questions indexed by position; no shared objects";
    case ScenarioId::EprUniform: return "2x2 binary design with uniform marginals";
    case ScenarioId::PrBox: return "2x2 design with E = +1, +1, +1, -1 and uniform marginals";
    case ScenarioId::TsirelsonRational: return "2x2 design with |E| = 7/10, a rational stand-in above the CHSH bound";
  }
  return "";
}

System build(ScenarioId id, const ScenarioParams& params) {
  const auto resolved = resolve(id, params);
  try {
    return build_resolved(id, resolved);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownScenario) throw;
    throw Error(ErrorCode::BadParameter, std::string("parameters do not give a valid system: ") + e.what());
  }
}

}  // namespace couplecheck
