#include <algorithm>
#include <cmath>
#include <vector>

#include "fuzzy_placer/fuzzy.hpp"

namespace fuzzy_placer::fuzzy {

namespace {

// Sorts and drops x values within kBreakpointTolerance of their predecessor.
std::vector<double> canonical_xs(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (out.empty() || x - out.back() > kBreakpointTolerance) out.push_back(x);
  }
  return out;
}

const LinguisticVariable& find_variable(std::span<const LinguisticVariable> variables, const std::string& name) {
  for (const auto& v : variables) {
    if (v.name() == name) return v;
  }
  throw UnknownVariable(name);
}

}  // namespace

Degree atom_degree(const RuleAtom& atom, std::span<const LinguisticVariable> variables, const CrispInputs& inputs) {
  const auto& variable = find_variable(variables, atom.variable);
  const auto& curve = variable.term(atom.term);
  const auto it = inputs.find(atom.variable);
  if (it == inputs.end()) throw MissingInput(atom.variable);
  const Degree mu = curve(it->second);
  return atom.complemented ? 1.0 - mu : mu;
}

Degree firing_strength(const Rule& rule, std::span<const LinguisticVariable> variables, const CrispInputs& inputs) {
  if (rule.antecedent.empty()) throw InvalidConfig("rule antecedent is empty");
  Degree strength = 1.0;
  for (const auto& atom : rule.antecedent) strength = std::min(strength, atom_degree(atom, variables, inputs));
  return strength;
}

MembershipFunction implicate(const MembershipFunction& consequent, Degree strength) {
  if (!(strength >= 0.0 && strength <= 1.0)) throw InvalidConfig("firing strength outside [0,1]");
  const auto& pts = consequent.points();
  std::vector<Breakpoint> out;
  out.reserve(pts.size() * 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      if ((a.mu - strength) * (b.mu - strength) < 0.0) {
        const double x = a.x + (strength - a.mu) / (b.mu - a.mu) * (b.x - a.x);
        if (x - a.x > kBreakpointTolerance && b.x - x > kBreakpointTolerance) out.push_back({x, strength});
      }
    }
    out.push_back({pts[i].x, std::min(pts[i].mu, strength)});
  }
  return MembershipFunction(std::move(out));
}

AggregatedOutput aggregate(std::span<const MembershipFunction> clipped) {
  if (clipped.empty()) throw EmptyRuleSet();
  if (clipped.size() == 1) return {clipped.front()};

  std::vector<double> grid;
  for (const auto& c : clipped) {
    for (const auto& p : c.points()) grid.push_back(p.x);
  }
  grid = canonical_xs(std::move(grid));

  // Every curve is linear between consecutive grid points, so the upper
  // envelope can only bend where two of them cross inside an interval.
  std::vector<double> xs = grid;
  std::vector<double> at_a(clipped.size());
  std::vector<double> at_b(clipped.size());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double a = grid[k - 1];
    const double b = grid[k];
    for (std::size_t i = 0; i < clipped.size(); ++i) {
      at_a[i] = clipped[i](a);
      at_b[i] = clipped[i](b);
    }
    for (std::size_t i = 0; i < clipped.size(); ++i) {
      for (std::size_t j = i + 1; j < clipped.size(); ++j) {
        const double da = at_a[i] - at_a[j];
        const double db = at_b[i] - at_b[j];
        if (da * db < 0.0) xs.push_back(a + da / (da - db) * (b - a));
      }
    }
  }
  xs = canonical_xs(std::move(xs));

  std::vector<Breakpoint> out;
  out.reserve(xs.size());
  for (double x : xs) {
    Degree mu = 0.0;
    for (const auto& c : clipped) mu = std::max(mu, c(x));
    out.push_back({x, std::clamp(mu, 0.0, 1.0)});
  }
  return {MembershipFunction(std::move(out))};
}

double defuzzify_centroid(const AggregatedOutput& agg, const Universe& universe) {
  const auto& curve = agg.curve;
  std::vector<double> xs{universe.min};
  for (const auto& p : curve.points()) {
    if (p.x > universe.min && p.x < universe.max) xs.push_back(p.x);
  }
  xs.push_back(universe.max);

  // Exact integrals of mu and x*mu over each linear piece.
  double area = 0.0;
  double moment = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double x0 = xs[i - 1];
    const double x1 = xs[i];
    const double m0 = curve(x0);
    const double m1 = curve(x1);
    const double h = x1 - x0;
    area += h * (m0 + m1) / 2.0;
    moment += h * (x0 * (2.0 * m0 + m1) + x1 * (m0 + 2.0 * m1)) / 6.0;
  }
  if (!(area > 0.0)) throw DegenerateOutput();
  return std::clamp(moment / area, universe.min, universe.max);
}

double infer(const RuleBase& rb, const CrispInputs& inputs) {
  std::vector<MembershipFunction> clipped;
  clipped.reserve(rb.rules().size());
  for (const auto& rule : rb.rules()) {
    const Degree strength = firing_strength(rule, rb.inputs(), inputs);
    clipped.push_back(implicate(rb.output().term(rule.consequent.term), strength));
  }
  return defuzzify_centroid(aggregate(clipped), rb.output().universe());
}

}  // namespace fuzzy_placer::fuzzy
