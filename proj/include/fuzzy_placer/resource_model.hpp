#pragma once

// Scoring of storage resources: three crisp inputs (speed, reliability,
// concentration), one output (probability) and two production rules:
//
//   1. speed high AND reliability high AND concentration low
//        -> probability high
//   2. speed not high AND reliability not high AND concentration not low
//        -> probability low
//
// "not" is the complement 1 - mu of the positive term.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzy_placer/fuzzy.hpp"

namespace fuzzy_placer::resource {

inline constexpr std::string_view kSpeed = "speed";
inline constexpr std::string_view kReliability = "reliability";
inline constexpr std::string_view kConcentration = "concentration";
inline constexpr std::string_view kProbability = "probability";

inline constexpr std::string_view kHigh = "высокая";
inline constexpr std::string_view kLow = "низкая";

struct ResourceMetrics {
  double speed_mbs = 0.0;
  double reliability_pct = 0.0;
  double concentration_pct = 0.0;
};

/// Throws InvalidConfig naming the offending field ("speed", "reliability"
/// or "concentration") when a value is non-finite or out of range.
void validate(const ResourceMetrics& m);

struct ResourceScore {
  std::string id;
  double p = 0.0;

  friend bool operator==(const ResourceScore&, const ResourceScore&) = default;
};

/// Replaces the breakpoints of one default term.
struct TermOverride {
  std::string variable;
  std::string term;
  std::vector<fuzzy::Breakpoint> points;
};

/// The two-rule base with default shapes:
///   speed [0,100] Mb/s, high = ramp (20,0)-(80,1)
///   reliability [0,100] %, high = ramp (90,0)-(99.9,1)
///   concentration [0,100] %, low = ramp (0,1)-(50,0)
///   probability [0,1], low = ramp (0,1)-(0.5,0), high = ramp (0.5,0)-(1,1)
/// Throws InvalidConfig when an override names an unknown variable/term or
/// produces an invalid curve.
fuzzy::RuleBase default_rulebase(const std::vector<TermOverride>& overrides = {});

/// Inferred score in the output universe. When no rule fires the score is
/// the midpoint of that universe.
double resource_probability(const ResourceMetrics& m, const fuzzy::RuleBase& rb);

/// Scores in input order. Throws DuplicateResourceId.
std::vector<ResourceScore> score_all(const std::vector<std::pair<std::string, ResourceMetrics>>& resources,
                                     const fuzzy::RuleBase& rb);

}  // namespace fuzzy_placer::resource
