#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "fuzzy_placer/fuzzy.hpp"

namespace fuzzy_placer::fuzzy {

namespace {

std::string describe(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

MembershipFunction::MembershipFunction(std::vector<Breakpoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InvalidConfig("membership function needs at least 2 breakpoints");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.x)) throw InvalidConfig("breakpoint x must be finite");
    if (!(p.mu >= 0.0 && p.mu <= 1.0)) {
      throw InvalidConfig("breakpoint degree " + describe(p.mu) + " outside [0,1]");
    }
    if (i > 0 && !(p.x > points_[i - 1].x)) {
      throw InvalidConfig("breakpoint x values must be strictly increasing (" + describe(points_[i - 1].x) +
                          " then " + describe(p.x) + ")");
    }
  }
}

Degree MembershipFunction::operator()(double x) const {
  if (x <= points_.front().x) return points_.front().mu;
  if (x >= points_.back().x) return points_.back().mu;
  // First breakpoint with bp.x > x; its predecessor brackets x from the left.
  auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double value, const Breakpoint& bp) { return value < bp.x; });
  auto lo = std::prev(hi);
  const double t = (x - lo->x) / (hi->x - lo->x);
  return lo->mu + t * (hi->mu - lo->mu);
}

MembershipFunction MembershipFunction::scaled(double factor) const {
  if (!(factor >= 0.0 && factor <= 1.0)) throw InvalidConfig("scale factor outside [0,1]");
  std::vector<Breakpoint> out = points_;
  for (auto& p : out) p.mu *= factor;
  return MembershipFunction(std::move(out));
}

Degree membership_degree(const MembershipFunction& mf, double x) { return mf(x); }

LinguisticVariable::LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
  if (name_.empty()) throw InvalidConfig("variable name must not be empty");
  if (!std::isfinite(universe_.min) || !std::isfinite(universe_.max) || !(universe_.min < universe_.max)) {
    throw InvalidConfig("variable '" + name_ + "': universe min must be below max");
  }
  std::set<std::string> seen;
  for (const auto& term : terms_) {
    if (term.name.empty()) throw InvalidConfig("variable '" + name_ + "': term name must not be empty");
    if (!seen.insert(term.name).second) {
      throw InvalidConfig("variable '" + name_ + "': duplicate term '" + term.name + "'");
    }
    if (term.curve.first_x() < universe_.min || term.curve.last_x() > universe_.max) {
      throw InvalidConfig("variable '" + name_ + "': term '" + term.name + "' has breakpoints outside the universe [" +
                          describe(universe_.min) + ", " + describe(universe_.max) + "]");
    }
  }
}

bool LinguisticVariable::has_term(const std::string& term) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.name == term; });
}

const MembershipFunction& LinguisticVariable::term(const std::string& term) const {
  for (const auto& t : terms_) {
    if (t.name == term) return t.curve;
  }
  throw UnknownTerm(name_, term);
}

RuleBase::RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output, std::vector<Rule> rules)
    : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)) {
  if (rules_.empty()) throw InvalidConfig("rulebase needs at least one rule");
  std::set<std::string> names;
  for (const auto& v : inputs_) {
    if (!names.insert(v.name()).second) throw InvalidConfig("duplicate input variable '" + v.name() + "'");
  }
  if (names.count(output_.name()) != 0) {
    throw InvalidConfig("output variable '" + output_.name() + "' is also an input");
  }
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    const std::string where = "rule " + std::to_string(r + 1) + ": ";
    if (rule.antecedent.empty()) throw InvalidConfig(where + "antecedent is empty");
    for (const auto& atom : rule.antecedent) {
      const auto it = std::find_if(inputs_.begin(), inputs_.end(),
                                   [&](const LinguisticVariable& v) { return v.name() == atom.variable; });
      if (it == inputs_.end()) throw InvalidConfig(where + "antecedent references unknown input '" + atom.variable + "'");
      if (!it->has_term(atom.term)) {
        throw InvalidConfig(where + "unknown term '" + atom.term + "' in variable '" + atom.variable + "'");
      }
    }
    if (rule.consequent.variable != output_.name()) {
      throw InvalidConfig(where + "consequent must target output variable '" + output_.name() + "'");
    }
    if (rule.consequent.complemented) throw InvalidConfig(where + "consequent must not be complemented");
    if (!output_.has_term(rule.consequent.term)) {
      throw InvalidConfig(where + "unknown term '" + rule.consequent.term + "' in variable '" + output_.name() + "'");
    }
  }
}

const LinguisticVariable& RuleBase::input(const std::string& name) const {
  for (const auto& v : inputs_) {
    if (v.name() == name) return v;
  }
  throw UnknownVariable(name);
}

}  // namespace fuzzy_placer::fuzzy
