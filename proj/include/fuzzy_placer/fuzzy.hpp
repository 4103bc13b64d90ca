#pragma once

// Mamdani inference over piecewise-linear membership functions.
//
// AND is min, implication clips the consequent at the firing strength, rule
// outputs are combined by pointwise max, and the result is collapsed to a
// crisp value by its center of gravity. All curves stay piecewise-linear
// through the pipeline, so every step is exact up to floating-point rounding.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fuzzy_placer/errors.hpp"

namespace fuzzy_placer::fuzzy {

/// Membership degree in [0,1].
using Degree = double;

/// Crisp value per input variable name.
using CrispInputs = std::map<std::string, double>;

/// Breakpoints closer than this along x are treated as the same point.
inline constexpr double kBreakpointTolerance = 1e-12;

struct Breakpoint {
  double x;
  Degree mu;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct Universe {
  double min;
  double max;

  double midpoint() const { return min + (max - min) / 2.0; }
  bool contains(double x) const { return x >= min && x <= max; }

  friend bool operator==(const Universe&, const Universe&) = default;
};

/// Piecewise-linear curve through strictly increasing breakpoints, extended
/// flat beyond the first and last one.
class MembershipFunction {
 public:
  /// Throws InvalidConfig unless there are at least two breakpoints with
  /// strictly increasing x and every mu in [0,1].
  explicit MembershipFunction(std::vector<Breakpoint> points);

  Degree operator()(double x) const;

  const std::vector<Breakpoint>& points() const { return points_; }
  double first_x() const { return points_.front().x; }
  double last_x() const { return points_.back().x; }

  /// Same breakpoints with every degree multiplied by `factor` in [0,1].
  MembershipFunction scaled(double factor) const;

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

 private:
  std::vector<Breakpoint> points_;
};

Degree membership_degree(const MembershipFunction& mf, double x);

struct Term {
  std::string name;
  MembershipFunction curve;

  friend bool operator==(const Term&, const Term&) = default;
};

class LinguisticVariable {
 public:
  /// Validates the universe, term-name uniqueness and that every breakpoint
  /// lies inside the universe. Terms keep their insertion order.
  LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms);

  const std::string& name() const { return name_; }
  const Universe& universe() const { return universe_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool has_term(const std::string& term) const;
  /// Throws UnknownTerm.
  const MembershipFunction& term(const std::string& term) const;

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

 private:
  std::string name_;
  Universe universe_;
  std::vector<Term> terms_;
};

struct RuleAtom {
  std::string variable;
  std::string term;
  /// Use 1 - mu instead of mu.
  bool complemented = false;

  friend bool operator==(const RuleAtom&, const RuleAtom&) = default;
};

/// IF all antecedent atoms THEN consequent.
struct Rule {
  std::vector<RuleAtom> antecedent;
  RuleAtom consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleBase {
 public:
  /// Throws InvalidConfig when any reference does not resolve, names collide,
  /// a consequent is complemented or targets an input, or there are no rules.
  RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output, std::vector<Rule> rules);

  const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
  const LinguisticVariable& output() const { return output_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// Input variable by name; throws UnknownVariable.
  const LinguisticVariable& input(const std::string& name) const;

  friend bool operator==(const RuleBase&, const RuleBase&) = default;

 private:
  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<Rule> rules_;
};

/// Pointwise max of the implicated rule consequents.
struct AggregatedOutput {
  MembershipFunction curve;
};

Degree atom_degree(const RuleAtom& atom, std::span<const LinguisticVariable> variables, const CrispInputs& inputs);

Degree firing_strength(const Rule& rule, std::span<const LinguisticVariable> variables, const CrispInputs& inputs);

/// min(mu(x), strength), with breakpoints added where the curve crosses the
/// clip level.
MembershipFunction implicate(const MembershipFunction& consequent, Degree strength);

/// Exact pointwise max. Throws EmptyRuleSet on an empty sequence.
AggregatedOutput aggregate(std::span<const MembershipFunction> clipped);

/// Center of gravity over `universe`, integrated in closed form per linear
/// segment. Throws DegenerateOutput when the area is zero.
double defuzzify_centroid(const AggregatedOutput& agg, const Universe& universe);

/// Full pipeline: firing strengths, clipping, aggregation, centroid.
double infer(const RuleBase& rb, const CrispInputs& inputs);

}  // namespace fuzzy_placer::fuzzy
