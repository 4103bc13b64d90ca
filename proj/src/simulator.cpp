#include "fuzzy_placer/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fuzzy_placer/resource_model.hpp"

namespace fuzzy_placer::sim {

ClusterState::ClusterState(std::vector<SimResource> resources) : resources_(std::move(resources)) {
  if (resources_.empty()) throw InvalidConfig("cluster needs at least one resource");
  std::set<std::string> seen;
  for (const auto& r : resources_) {
    if (!seen.insert(r.id).second) throw DuplicateResourceId(r.id);
    resource::validate({r.speed_mbs, r.reliability_pct, 0.0});
    total_placed_ += r.placed_chunks;
  }
}

std::size_t ClusterState::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < resources_.size(); ++i) {
    if (resources_[i].id == id) return i;
  }
  throw UnknownResource(id);
}

ClusterState ClusterState::with_placement(std::size_t index) const {
  ClusterState next = *this;
  next.resources_.at(index).placed_chunks += 1;
  next.total_placed_ += 1;
  return next;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::FuzzyArgmax:
      return "argmax";
    case Strategy::FuzzySample:
      return "sample";
    case Strategy::RoundRobin:
      return "round-robin";
    case Strategy::AlwaysFirst:
      return "always-first";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (auto s : {Strategy::FuzzyArgmax, Strategy::FuzzySample, Strategy::RoundRobin, Strategy::AlwaysFirst}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

double concentration_of(const ClusterState& state, const std::string& id) {
  const auto& r = state.resources()[state.index_of(id)];
  if (state.total_placed() == 0) return 0.0;
  return 100.0 * static_cast<double>(r.placed_chunks) / static_cast<double>(state.total_placed());
}

StepResult step(const ClusterState& state, Strategy strategy, const fuzzy::RuleBase& rb, selection::RngSeed seed,
                std::uint64_t step_index) {
  const auto& resources = state.resources();
  std::vector<resource::ResourceScore> scores;
  scores.reserve(resources.size());
  for (const auto& r : resources) {
    const resource::ResourceMetrics m{r.speed_mbs, r.reliability_pct, concentration_of(state, r.id)};
    scores.push_back({r.id, resource::resource_probability(m, rb)});
  }

  std::size_t chosen = 0;
  switch (strategy) {
    case Strategy::FuzzyArgmax:
      chosen = state.index_of(selection::select_argmax(scores));
      break;
    case Strategy::FuzzySample:
      try {
        chosen = selection::sample_index(selection::normalize(scores), seed, step_index);
      } catch (const ZeroMass&) {
        const double u = selection::uniform_at(seed, step_index);
        chosen = std::min(resources.size() - 1, static_cast<std::size_t>(u * static_cast<double>(resources.size())));
      }
      break;
    case Strategy::RoundRobin:
      chosen = static_cast<std::size_t>(step_index % resources.size());
      break;
    case Strategy::AlwaysFirst:
      chosen = 0;
      break;
  }

  std::vector<double> p;
  p.reserve(scores.size());
  for (const auto& s : scores) p.push_back(s.p);
  return {state.with_placement(chosen), chosen, resources[chosen].id, std::move(p)};
}

SimulationReport run(const ClusterState& initial, Strategy strategy, const fuzzy::RuleBase& rb,
                     selection::RngSeed seed, std::uint64_t n_chunks, bool trace) {
  SimulationReport report;
  if (trace) report.placements.emplace();

  ClusterState state = initial;
  for (std::uint64_t k = 0; k < n_chunks; ++k) {
    StepResult r = step(state, strategy, rb, seed, k);
    if (trace) report.placements->push_back({k, r.chosen_id, std::move(r.scores)});
    state = std::move(r.state);
  }

  for (const auto& r : state.resources()) {
    report.ids.push_back(r.id);
    report.counts.push_back(r.placed_chunks);
  }
  if (state.total_placed() > 0) {
    report.shares_defined = true;
    const double total = static_cast<double>(state.total_placed());
    for (auto c : report.counts) report.shares.push_back(static_cast<double>(c) / total);
    const auto [lo, hi] = std::minmax_element(report.shares.begin(), report.shares.end());
    report.min_share = *lo;
    report.max_share = *hi;
  }
  return report;
}

}  // namespace fuzzy_placer::sim
