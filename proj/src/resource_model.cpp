#include "fuzzy_placer/resource_model.hpp"

#include <cmath>
#include <set>

namespace fuzzy_placer::resource {

using fuzzy::Breakpoint;
using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;
using fuzzy::Rule;
using fuzzy::RuleAtom;
using fuzzy::Term;
using fuzzy::Universe;

namespace {

void check_range(std::string_view field, double value, double lo, double hi) {
  if (!std::isfinite(value) || value < lo || value > hi) {
    throw InvalidConfig(std::string(field) + " = " + std::to_string(value) + " is outside [" + std::to_string(lo) +
                        ", " + (std::isinf(hi) ? std::string("inf") : std::to_string(hi)) + "]");
  }
}

struct VariableDefaults {
  std::string name;
  Universe universe;
  std::vector<std::pair<std::string, std::vector<Breakpoint>>> terms;
};

}  // namespace

void validate(const ResourceMetrics& m) {
  check_range(kSpeed, m.speed_mbs, 0.0, INFINITY);
  check_range(kReliability, m.reliability_pct, 0.0, 100.0);
  check_range(kConcentration, m.concentration_pct, 0.0, 100.0);
}

fuzzy::RuleBase default_rulebase(const std::vector<TermOverride>& overrides) {
  const std::string high(kHigh);
  const std::string low(kLow);
  std::vector<VariableDefaults> defaults{
      {std::string(kSpeed), {0.0, 100.0}, {{high, {{20.0, 0.0}, {80.0, 1.0}}}}},
      {std::string(kReliability), {0.0, 100.0}, {{high, {{90.0, 0.0}, {99.9, 1.0}}}}},
      {std::string(kConcentration), {0.0, 100.0}, {{low, {{0.0, 1.0}, {50.0, 0.0}}}}},
      {std::string(kProbability), {0.0, 1.0}, {{low, {{0.0, 1.0}, {0.5, 0.0}}}, {high, {{0.5, 0.0}, {1.0, 1.0}}}}},
  };

  for (const auto& o : overrides) {
    bool applied = false;
    for (auto& v : defaults) {
      if (v.name != o.variable) continue;
      for (auto& [name, points] : v.terms) {
        if (name == o.term) {
          points = o.points;
          applied = true;
        }
      }
      if (!applied) throw InvalidConfig("override: unknown term '" + o.term + "' in variable '" + o.variable + "'");
    }
    if (!applied) throw InvalidConfig("override: unknown variable '" + o.variable + "'");
  }

  std::vector<LinguisticVariable> variables;
  for (auto& v : defaults) {
    std::vector<Term> terms;
    for (auto& [name, points] : v.terms) terms.push_back({name, MembershipFunction(std::move(points))});
    variables.emplace_back(v.name, v.universe, std::move(terms));
  }
  LinguisticVariable output = std::move(variables.back());
  variables.pop_back();

  const std::string speed(kSpeed);
  const std::string reliability(kReliability);
  const std::string concentration(kConcentration);
  const std::string probability(kProbability);
  std::vector<Rule> rules{
      Rule{{{speed, high, false}, {reliability, high, false}, {concentration, low, false}}, {probability, high, false}},
      Rule{{{speed, high, true}, {reliability, high, true}, {concentration, low, true}}, {probability, low, false}},
  };
  return fuzzy::RuleBase(std::move(variables), std::move(output), std::move(rules));
}

double resource_probability(const ResourceMetrics& m, const fuzzy::RuleBase& rb) {
  const fuzzy::CrispInputs inputs{
      {std::string(kSpeed), m.speed_mbs},
      {std::string(kReliability), m.reliability_pct},
      {std::string(kConcentration), m.concentration_pct},
  };
  try {
    return fuzzy::infer(rb, inputs);
  } catch (const DegenerateOutput&) {
    return rb.output().universe().midpoint();
  }
}

std::vector<ResourceScore> score_all(const std::vector<std::pair<std::string, ResourceMetrics>>& resources,
                                     const fuzzy::RuleBase& rb) {
  std::set<std::string> seen;
  for (const auto& [id, metrics] : resources) {
    if (!seen.insert(id).second) throw DuplicateResourceId(id);
  }
  std::vector<ResourceScore> scores;
  scores.reserve(resources.size());
  for (const auto& [id, metrics] : resources) scores.push_back({id, resource_probability(metrics, rb)});
  return scores;
}

}  // namespace fuzzy_placer::resource
