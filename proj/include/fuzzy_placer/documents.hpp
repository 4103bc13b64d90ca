#pragma once

// File formats: rulebase documents (YAML), resource inventories (CSV),
// membership-curve exports (CSV) and simulation reports (YAML). See
// docs/formats.md for the layouts.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzy_placer/fuzzy.hpp"
#include "fuzzy_placer/resource_model.hpp"
#include "fuzzy_placer/simulator.hpp"

namespace fuzzy_placer::documents {

inline constexpr int kRulebaseSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kInventoryHeader = "id,speed_mbs,reliability_pct,concentration_pct";
inline constexpr std::size_t kCurveSamples = 201;

/// Shortest decimal text that parses back to exactly `v`.
std::string exact_number(double v);
/// Fixed six-decimal text, independent of the global locale.
std::string fixed6(double v);

/// Throws DocumentError with line/column for syntax errors and for every
/// violated invariant.
fuzzy::RuleBase parse_rulebase(std::string_view text, const std::string& source = "<rulebase>");
std::string serialize_rulebase(const fuzzy::RuleBase& rb);

/// Reads and parses a rulebase file; throws DocumentError if it cannot be read.
fuzzy::RuleBase load_rulebase(const std::filesystem::path& path);

using Inventory = std::vector<std::pair<std::string, resource::ResourceMetrics>>;

Inventory parse_inventory(std::string_view text, const std::string& source = "<inventory>");
Inventory load_inventory(const std::filesystem::path& path);

/// Header `x,<term>...`, then one row per sample: kCurveSamples uniform
/// points over the universe merged with every term breakpoint.
std::string export_curves(const fuzzy::LinguisticVariable& variable, std::size_t samples = kCurveSamples);

struct ReportContext {
  sim::Strategy strategy;
  std::uint64_t seed;
  std::uint64_t chunks;
};

std::string serialize_report(const sim::SimulationReport& report, const ReportContext& ctx);

}  // namespace fuzzy_placer::documents
