#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzy_placer/fuzzy.hpp"
#include "fuzzy_placer/simulator.hpp"

namespace fuzzy_placer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDomainError = 3;

inline constexpr const char* kRulebaseEnv = "FUZZY_PLACER_RULEBASE";

struct RulebaseOptions {
  /// --rulebase; falls back to $FUZZY_PLACER_RULEBASE, then to the built-in rules.
  std::optional<std::string> path;
  /// --defaults: use the built-in rules when the named file does not exist.
  bool defaults = false;
};

/// Throws DocumentError when a named file is missing (without --defaults)
/// or invalid. `env_path` is the value of $FUZZY_PLACER_RULEBASE, if set.
fuzzy::RuleBase resolve_rulebase(const RulebaseOptions& opts, const std::optional<std::string>& env_path);

struct EvaluateArgs {
  double speed = 0.0;
  double reliability = 0.0;
  double concentration = 0.0;
  RulebaseOptions rulebase;
};

struct SelectArgs {
  std::string inventory;
  sim::Strategy strategy = sim::Strategy::FuzzyArgmax;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  RulebaseOptions rulebase;
};

struct SimulateArgs {
  std::string inventory;
  sim::Strategy strategy = sim::Strategy::FuzzySample;
  std::uint64_t chunks = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool trace = false;
  RulebaseOptions rulebase;
};

struct PlotArgs {
  std::string variable;
  std::optional<std::string> out;
  RulebaseOptions rulebase;
};

// Each command returns a process exit code and never throws.
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err);

/// Parses a full command line (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzy_placer::cli
