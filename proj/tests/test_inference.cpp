#include <doctest.h>

#include <cmath>
#include <random>

#include "fuzzy_placer/fuzzy.hpp"
#include "oracle.hpp"

using namespace fuzzy_placer;
using namespace fuzzy_placer::fuzzy;

namespace {

const Universe kUnit{0.0, 1.0};

LinguisticVariable var(const std::string& name, Universe u, std::vector<Term> terms) {
  return LinguisticVariable(name, u, std::move(terms));
}

// Two inputs with a/b terms, output low/high mirrored about 0.5.
RuleBase mirrored_rulebase() {
  const MembershipFunction up({{0, 0}, {1, 1}});
  std::vector<LinguisticVariable> inputs{var("a", kUnit, {{"on", up}}), var("b", kUnit, {{"on", up}})};
  auto out = var("out", kUnit,
                 {{"low", MembershipFunction({{0, 1}, {0.5, 0}})}, {"high", MembershipFunction({{0.5, 0}, {1, 1}})}});
  std::vector<Rule> rules{
      {{{"a", "on", false}, {"b", "on", false}}, {"out", "high", false}},
      {{{"a", "on", true}, {"b", "on", true}}, {"out", "low", false}},
  };
  return RuleBase(std::move(inputs), std::move(out), std::move(rules));
}

oracle::Curve raw(const MembershipFunction& mf) {
  oracle::Curve c;
  for (const auto& p : mf.points()) c.emplace_back(p.x, p.mu);
  return c;
}

}  // namespace

TEST_CASE("atom_degree applies the complement flag") {
  const auto rb = mirrored_rulebase();
  const CrispInputs in{{"a", 0.7}, {"b", 0.0}};
  CHECK(atom_degree({"a", "on", false}, rb.inputs(), in) == doctest::Approx(0.7));
  CHECK(atom_degree({"a", "on", true}, rb.inputs(), in) == doctest::Approx(0.3));
  CHECK(atom_degree({"b", "on", true}, rb.inputs(), in) == 1.0);
  CHECK(atom_degree({"b", "on", false}, rb.inputs(), {{"b", 1.0}}) == 1.0);

  CHECK_THROWS_AS(atom_degree({"c", "on", false}, rb.inputs(), in), UnknownVariable);
  CHECK_THROWS_AS(atom_degree({"a", "off", false}, rb.inputs(), in), UnknownTerm);
  CHECK_THROWS_AS(atom_degree({"a", "on", false}, rb.inputs(), {}), MissingInput);
}

TEST_CASE("complement is an involution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto rb = mirrored_rulebase();
  for (int i = 0; i < 1000; ++i) {
    const CrispInputs in{{"a", unit(rng)}};
    RuleAtom atom{"a", "on", false};
    const double d = atom_degree(atom, rb.inputs(), in);
    atom.complemented = !atom.complemented;
    const double once = atom_degree(atom, rb.inputs(), in);
    atom.complemented = !atom.complemented;
    CHECK(atom_degree(atom, rb.inputs(), in) == d);
    CHECK(std::abs((1.0 - once) - d) <= 1e-15);
  }
}

TEST_CASE("firing_strength is the min over the antecedent") {
  const MembershipFunction up({{0, 0}, {1, 1}});
  std::vector<LinguisticVariable> vars{var("x", kUnit, {{"t", up}}), var("y", kUnit, {{"t", up}}),
                                       var("z", kUnit, {{"t", up}})};
  const Rule three{{{"x", "t", false}, {"y", "t", false}, {"z", "t", false}}, {"out", "t", false}};
  CHECK(firing_strength(three, vars, {{"x", 0.8}, {"y", 0.6}, {"z", 0.9}}) == doctest::Approx(0.6));
  CHECK(firing_strength(three, vars, {{"x", 0.8}, {"y", 0.0}, {"z", 0.9}}) == 0.0);
  const Rule one{{{"y", "t", false}}, {"out", "t", false}};
  CHECK(firing_strength(one, vars, {{"y", 0.42}}) == doctest::Approx(0.42));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const CrispInputs in{{"x", unit(rng)}, {"y", unit(rng)}, {"z", unit(rng)}};
    const double s = firing_strength(three, vars, in);
    bool equals_one = false;
    for (const auto& atom : three.antecedent) {
      const double d = atom_degree(atom, vars, in);
      CHECK(s <= d);
      equals_one = equals_one || s == d;
    }
    CHECK(equals_one);
  }
}

TEST_CASE("implicate clips at the firing strength") {
  const MembershipFunction ramp({{0, 0}, {1, 1}});
  CHECK(implicate(ramp, 1.0) == ramp);

  const auto zero = implicate(ramp, 0.0);
  for (const auto& p : zero.points()) CHECK(p.mu == 0.0);

  const auto half = implicate(ramp, 0.5);
  CHECK(half.points().size() == 3);
  CHECK(half(0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(half(0.5) == 0.5);
  CHECK(half(0.75) == 0.5);

  CHECK_THROWS_AS(implicate(ramp, 1.5), InvalidConfig);
  CHECK_THROWS_AS(implicate(ramp, -0.1), InvalidConfig);
}

TEST_CASE("implicate equals pointwise min on random curves") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Breakpoint> pts;
    double x = 0.0;
    for (int i = 0; i < 6; ++i) {
      pts.push_back({x, unit(rng)});
      x += 0.05 + 0.1 * unit(rng);
    }
    const MembershipFunction mf(pts);
    const double s = unit(rng);
    const auto clipped = implicate(mf, s);
    const auto c = raw(mf);
    for (int k = 0; k <= 1000; ++k) {
      const double probe = x * k / 1000.0;
      const double expected = std::min(oracle::interpolate(c, probe), s);
      CHECK(std::abs(clipped(probe) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("aggregate is the exact pointwise max") {
  const MembershipFunction tri({{0, 0}, {0.5, 1}, {1, 0}});
  const std::vector<MembershipFunction> single{tri};
  CHECK(aggregate(single).curve == tri);

  const MembershipFunction zero({{0, 0}, {1, 0}});
  const std::vector<MembershipFunction> with_zero{zero, tri};
  const auto agg = aggregate(with_zero).curve;
  for (int k = 0; k <= 100; ++k) CHECK(agg(k / 100.0) == doctest::Approx(tri(k / 100.0)).epsilon(1e-15));

  const MembershipFunction left({{0, 0}, {0.2, 0.6}, {0.4, 0}});
  const MembershipFunction right({{0.6, 0}, {0.8, 0.3}, {1, 0}});
  const std::vector<MembershipFunction> disjoint{left, right};
  const auto both = aggregate(disjoint).curve;
  for (int k = 0; k <= 100; ++k) {
    const double x = k / 100.0;
    CHECK(both(x) == doctest::Approx(x <= 0.5 ? left(x) : right(x)).epsilon(1e-15));
  }

  CHECK_THROWS_AS(aggregate(std::vector<MembershipFunction>{}), EmptyRuleSet);
}

TEST_CASE("aggregate dominates its inputs on random curves") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MembershipFunction> curves;
    std::vector<oracle::Curve> raws;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < n; ++c) {
      std::vector<Breakpoint> pts;
      double x = 0.3 * unit(rng);
      for (int i = 0; i < 4; ++i) {
        pts.push_back({x, unit(rng)});
        x += 0.02 + 0.2 * unit(rng);
      }
      curves.push_back(implicate(MembershipFunction(pts), unit(rng)));
      raws.push_back(raw(curves.back()));
    }
    const auto agg = aggregate(curves).curve;
    for (int k = 0; k <= 1000; ++k) {
      const double probe = k / 1000.0;
      double expected = 0.0;
      for (const auto& r : raws) expected = std::max(expected, oracle::interpolate(r, probe));
      CHECK(std::abs(agg(probe) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("centroid closed form agrees with the discretized oracle") {
  const MembershipFunction tri({{0, 0}, {0.5, 1}, {1, 0}});
  CHECK(defuzzify_centroid({tri}, kUnit) == doctest::Approx(0.5).epsilon(1e-15));

  // mu(x) = min(x, 0.5): 0.2291667 / 0.375 = 11/18.
  const auto clipped = implicate(MembershipFunction({{0, 0}, {1, 1}}), 0.5);
  const double closed = defuzzify_centroid({clipped}, kUnit);
  CHECK(closed == doctest::Approx(11.0 / 18.0).epsilon(1e-14));
  const double sampled = oracle::discrete_centroid([](double x) { return std::min(x, 0.5); }, 0, 1);
  CHECK(sampled == doctest::Approx(0.611137).epsilon(1e-6));
  CHECK(std::abs(closed - sampled) < 1e-4);

  // Ramp (0.5,0)-(1,1): 0.208333 / 0.25 = 5/6.
  const MembershipFunction ramp({{0.5, 0}, {1, 1}});
  const double ramp_closed = defuzzify_centroid({ramp}, kUnit);
  CHECK(ramp_closed == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  const double ramp_sampled = oracle::discrete_centroid([](double x) { return std::clamp(2 * x - 1, 0.0, 1.0); }, 0, 1);
  CHECK(ramp_sampled == doctest::Approx(0.833367).epsilon(1e-6));
  CHECK(std::abs(ramp_closed - ramp_sampled) < 1e-4);
}

TEST_CASE("centroid integrates flat extensions inside the universe") {
  // Curve defined on [0.2, 0.4] only; flat 1.0 continues to x = 1.
  const MembershipFunction partial({{0.2, 0}, {0.4, 1}});
  const double closed = defuzzify_centroid({partial}, kUnit);
  const double sampled = oracle::discrete_centroid([&](double x) { return std::clamp((x - 0.2) / 0.2, 0.0, 1.0); }, 0, 1);
  CHECK(std::abs(closed - sampled) < 1e-4);
}

TEST_CASE("centroid errors on zero area") {
  const MembershipFunction zero({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(defuzzify_centroid({zero}, kUnit), DegenerateOutput);
}

TEST_CASE("centroid is invariant under uniform scaling") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Breakpoint> pts;
    double x = 0.0;
    for (int i = 0; i < 5; ++i) {
      pts.push_back({x, 0.05 + 0.95 * unit(rng)});
      x += 0.25;
    }
    const AggregatedOutput agg{MembershipFunction(pts)};
    const double base = defuzzify_centroid(agg, kUnit);
    const double c = 0.001 + 0.999 * unit(rng);
    CHECK(std::abs(defuzzify_centroid({agg.curve.scaled(c)}, kUnit) - base) <= 1e-9);
  }
}

TEST_CASE("infer runs the full pipeline") {
  const auto rb = mirrored_rulebase();
  // Rule 1 fires at 1, rule 2 at 0: the unclipped high ramp.
  CHECK(infer(rb, {{"a", 1.0}, {"b", 1.0}}) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  // Both rules fire at 0.5: the aggregate is symmetric about 0.5.
  CHECK(infer(rb, {{"a", 0.5}, {"b", 0.5}}) == doctest::Approx(0.5).epsilon(1e-14));
  // Rule 1 min(1, 0) = 0, rule 2 min(0, 1) = 0.
  CHECK_THROWS_AS(infer(rb, {{"a", 1.0}, {"b", 0.0}}), DegenerateOutput);
  CHECK_THROWS_AS(infer(rb, {{"a", 1.0}}), MissingInput);
}

TEST_CASE("infer matches the oracle on random rulebases") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_curve = [&](double lo, double hi) {
    std::vector<Breakpoint> pts;
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * unit(rng));
    std::sort(xs.begin(), xs.end());
    for (int i = 0; i < n; ++i) pts.push_back({xs[i] + 1e-6 * i * (hi - lo) / n, unit(rng)});
    pts.back().x = std::min(pts.back().x, hi);
    return MembershipFunction(pts);
  };

  int compared = 0;
  while (compared < 100) {
    std::vector<LinguisticVariable> inputs;
    for (int v = 0; v < 3; ++v) {
      inputs.push_back(var("in" + std::to_string(v), {0, 100}, {{"p", random_curve(0, 100)}, {"q", random_curve(0, 100)}}));
    }
    auto out = var("out", kUnit, {{"l", random_curve(0, 1)}, {"m", random_curve(0, 1)}, {"h", random_curve(0, 1)}});
    std::vector<Rule> rules;
    const int n_rules = 1 + static_cast<int>(rng() % 4);
    const char* terms[] = {"p", "q"};
    const char* outs[] = {"l", "m", "h"};
    for (int r = 0; r < n_rules; ++r) {
      Rule rule;
      const int atoms = 1 + static_cast<int>(rng() % 3);
      for (int a = 0; a < atoms; ++a) {
        rule.antecedent.push_back({"in" + std::to_string(rng() % 3), terms[rng() % 2], rng() % 2 == 0});
      }
      rule.consequent = {"out", outs[rng() % 3], false};
      rules.push_back(rule);
    }
    const RuleBase rb(inputs, out, rules);
    const CrispInputs in{{"in0", 100 * unit(rng)}, {"in1", 100 * unit(rng)}, {"in2", 100 * unit(rng)}};

    // Independent evaluation of every firing strength.
    std::vector<std::pair<oracle::Curve, double>> fired;
    double total_strength = 0.0;
    for (const auto& rule : rb.rules()) {
      double s = 1.0;
      for (const auto& atom : rule.antecedent) {
        const double mu = oracle::interpolate(raw(rb.input(atom.variable).term(atom.term)), in.at(atom.variable));
        s = std::min(s, atom.complemented ? 1.0 - mu : mu);
      }
      total_strength += s;
      fired.emplace_back(raw(rb.output().term(rule.consequent.term)), s);
    }
    const auto mu = oracle::clipped_max(fired);
    double area_probe = 0.0;
    for (int k = 0; k <= 100; ++k) area_probe += mu(k / 100.0);
    if (total_strength < 0.05 || area_probe < 0.5) continue;

    const double got = infer(rb, in);
    CHECK(got >= 0.0);
    CHECK(got <= 1.0);
    CHECK(std::abs(got - oracle::discrete_centroid(mu, 0, 1)) <= 1e-4);
    ++compared;
  }
}
