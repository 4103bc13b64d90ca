#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzy_placer/resource_model.hpp"

namespace fuzzy_placer::selection {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Draw `draw_index` of a SplitMix64 stream started at `seed`, i.e.
/// mix64(seed + (draw_index + 1) * 0x9e3779b97f4a7c15). Any draw can be
/// computed directly without replaying the ones before it.
std::uint64_t splitmix64_at(RngSeed seed, std::uint64_t draw_index);

/// Top 53 bits of splitmix64_at scaled into [0,1).
double uniform_at(RngSeed seed, std::uint64_t draw_index);

/// Normalized weights over resource ids.
class SelectionDistribution {
 public:
  /// Throws InvalidConfig unless sizes match, there is at least one entry,
  /// every weight is non-negative and the weights sum to 1 within 1e-12.
  SelectionDistribution(std::vector<std::string> ids, std::vector<double> weights);

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return ids_.size(); }

 private:
  std::vector<std::string> ids_;
  std::vector<double> weights_;
};

/// Id with the largest p; the lowest index wins ties. Throws EmptyScoreSet.
const std::string& select_argmax(std::span<const resource::ResourceScore> scores);

/// weights_i = p_i / sum(p). Throws EmptyScoreSet, InvalidConfig on a
/// negative or non-finite p, and ZeroMass when the sum is zero.
SelectionDistribution normalize(std::span<const resource::ResourceScore> scores);

/// Roulette wheel: the smallest index whose left-to-right cumulative weight
/// exceeds u = uniform_at(seed, draw_index). The last positive-weight bucket
/// absorbs rounding residue, so zero-weight ids are never returned.
const std::string& sample(const SelectionDistribution& dist, RngSeed seed, std::uint64_t draw_index);

/// Index-returning form of sample().
std::size_t sample_index(const SelectionDistribution& dist, RngSeed seed, std::uint64_t draw_index);

}  // namespace fuzzy_placer::selection
