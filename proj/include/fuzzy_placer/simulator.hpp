#pragma once

// Synthetic storage cluster. Each step places one equally sized chunk on a
// resource chosen by a strategy; concentration is the chosen resource's
// share of all chunks placed so far, measured before the pending placement.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzy_placer/fuzzy.hpp"
#include "fuzzy_placer/selector.hpp"

namespace fuzzy_placer::sim {

struct SimResource {
  std::string id;
  double speed_mbs = 0.0;
  double reliability_pct = 0.0;
  std::uint64_t placed_chunks = 0;

  friend bool operator==(const SimResource&, const SimResource&) = default;
};

class ClusterState {
 public:
  /// Throws InvalidConfig on an empty list or out-of-range attributes and
  /// DuplicateResourceId on repeated ids.
  explicit ClusterState(std::vector<SimResource> resources);

  const std::vector<SimResource>& resources() const { return resources_; }
  std::uint64_t total_placed() const { return total_placed_; }
  std::size_t index_of(const std::string& id) const;

  /// Copy with one more chunk on resource `index`.
  ClusterState with_placement(std::size_t index) const;

  friend bool operator==(const ClusterState&, const ClusterState&) = default;

 private:
  std::vector<SimResource> resources_;
  std::uint64_t total_placed_ = 0;
};

enum class Strategy { FuzzyArgmax, FuzzySample, RoundRobin, AlwaysFirst };

/// CLI spelling: argmax, sample, round-robin, always-first.
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// 100 * placed / total, or 0 for an empty cluster. Throws UnknownResource.
double concentration_of(const ClusterState& state, const std::string& id);

struct StepResult {
  ClusterState state;
  std::size_t chosen_index;
  std::string chosen_id;
  /// Fuzzy score of every resource before the placement.
  std::vector<double> scores;
};

/// Scores every resource against live concentrations, picks one per
/// strategy and returns the updated state. FuzzySample draws with
/// (seed, step_index); if every score is zero it falls back to a uniform
/// pick from the same draw.
StepResult step(const ClusterState& state, Strategy strategy, const fuzzy::RuleBase& rb, selection::RngSeed seed,
                std::uint64_t step_index);

struct Placement {
  std::uint64_t step;
  std::string chosen_id;
  std::vector<double> scores;
};

struct SimulationReport {
  std::vector<std::string> ids;
  std::vector<std::uint64_t> counts;
  /// Empty when nothing has been placed.
  std::vector<double> shares;
  bool shares_defined = false;
  double max_share = 0.0;
  double min_share = 0.0;
  std::optional<std::vector<Placement>> placements;
};

SimulationReport run(const ClusterState& initial, Strategy strategy, const fuzzy::RuleBase& rb,
                     selection::RngSeed seed, std::uint64_t n_chunks, bool trace = false);

}  // namespace fuzzy_placer::sim
