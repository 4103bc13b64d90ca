#include "fuzzy_placer/selector.hpp"

#include <cmath>

namespace fuzzy_placer::selection {

std::uint64_t splitmix64_at(RngSeed seed, std::uint64_t draw_index) {
  std::uint64_t z = seed.value + (draw_index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_at(RngSeed seed, std::uint64_t draw_index) {
  return static_cast<double>(splitmix64_at(seed, draw_index) >> 11) * 0x1.0p-53;
}

SelectionDistribution::SelectionDistribution(std::vector<std::string> ids, std::vector<double> weights)
    : ids_(std::move(ids)), weights_(std::move(weights)) {
  if (ids_.empty()) throw InvalidConfig("distribution needs at least one entry");
  if (ids_.size() != weights_.size()) throw InvalidConfig("distribution ids and weights differ in length");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidConfig("distribution weights must be finite and non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidConfig("distribution weights must sum to 1");
}

const std::string& select_argmax(std::span<const resource::ResourceScore> scores) {
  if (scores.empty()) throw EmptyScoreSet();
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].p > scores[best].p) best = i;
  }
  return scores[best].id;
}

SelectionDistribution normalize(std::span<const resource::ResourceScore> scores) {
  if (scores.empty()) throw EmptyScoreSet();
  double total = 0.0;
  for (const auto& s : scores) {
    if (!(s.p >= 0.0) || !std::isfinite(s.p)) throw InvalidConfig("score for '" + s.id + "' must be finite and >= 0");
    total += s.p;
  }
  if (total == 0.0) throw ZeroMass();

  std::vector<std::string> ids;
  std::vector<double> weights;
  ids.reserve(scores.size());
  weights.reserve(scores.size());
  for (const auto& s : scores) {
    ids.push_back(s.id);
    weights.push_back(s.p / total);
  }
  return SelectionDistribution(std::move(ids), std::move(weights));
}

std::size_t sample_index(const SelectionDistribution& dist, RngSeed seed, std::uint64_t draw_index) {
  const auto& w = dist.weights();
  const double u = uniform_at(seed, draw_index);
  std::size_t last_positive = 0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;
    last_positive = k;
    cumulative += w[k];
    if (cumulative > u) return k;
  }
  return last_positive;
}

const std::string& sample(const SelectionDistribution& dist, RngSeed seed, std::uint64_t draw_index) {
  return dist.ids()[sample_index(dist, seed, draw_index)];
}

}  // namespace fuzzy_placer::selection
