#include "doctest.h"
#include "relconv/error.hpp"
#include "relconv/generators.hpp"
#include "relconv/haar.hpp"
#include "relconv/properties.hpp"

using namespace relconv;

namespace {

Rational q(long p, long d) { return Rational(p, d); }

}  // namespace

TEST_CASE("pushforward of point measures") {
  PointMeasure m;
  m.set(0, q(1, 4));
  m.set(1, q(1, 4));
  m.set(2, q(1, 2));
  const std::function<std::optional<Index>(const Index&)> mod2 = [](const Index& x) { return std::optional<Index>(x % 2); };
  const PointMeasure p = pushforward<Index, Index>(m, mod2);
  CHECK(p.weight(0) == q(3, 4));
  CHECK(p.weight(1) == q(1, 4));
  CHECK(p.total_mass() == m.total_mass());

  const FiniteSet a = FiniteSet::range(3), b = FiniteSet::range(2);
  const Relation f({a}, {b}, {{0, 1}, {1, 1}, {2, 0}});
  CHECK(pushforward(m, f).weight(1) == q(1, 2));
  const Relation partial({a}, {b}, {{0, 1}});
  CHECK_THROWS_AS(pushforward(m, partial), MeasureError);
  CHECK_THROWS_AS(m.set(0, q(-1, 2)), MeasureError);
}

TEST_CASE("right Haar systems on groupoids") {
  const GroupoidTable z2 = cyclic_group(2);
  CHECK(check_right_haar(z2, counting_haar(z2)).holds);
  CHECK(check_right_haar(z2, normalized_counting_haar(z2)).holds);
  RightHaarSystem skew;
  PointMeasure m;
  m.set(0, q(1, 2));
  m.set(1, q(1, 3));
  skew.per_object.push_back(m);
  const HaarCheck c = check_right_haar(z2, skew);
  CHECK_FALSE(c.holds);
  CHECK(c.witness == 1);

  const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b", "c"}));
  CHECK(check_right_haar(pair, counting_haar(pair)).holds);
  // A measure at x charging an arrow with another source.
  RightHaarSystem wrong = counting_haar(pair);
  wrong.per_object[0].set(pair.unit(1), 1);
  CHECK_FALSE(check_right_haar(pair, wrong).holds);

  const ActionGroupoid act = action_groupoid(cyclic_group(3), FiniteSet({"x", "y", "z"}),
                                             {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(check_right_haar(act.groupoid, act.haar).holds);
  for (const auto& m2 : act.haar.per_object) CHECK(m2.total_mass() == 1);
}

TEST_CASE("disintegration and reassembly") {
  PairMeasure m;
  m.set({0, 0}, q(1, 4));
  m.set({0, 1}, q(1, 4));
  m.set({2, 2}, q(1, 2));
  const auto proj = [](const Pair& p) { return Pair{p.first % 2, p.second % 2}; };
  const Disintegration d = disintegrate(m, proj);
  CHECK(d.base.weight({0, 0}) == q(3, 4));
  CHECK(d.base.weight({0, 1}) == q(1, 4));
  REQUIRE(d.conditionals.count({0, 0}) == 1);
  CHECK(d.conditionals.at({0, 0}).weight({0, 0}) == q(1, 3));
  CHECK(d.conditionals.at({0, 0}).weight({2, 2}) == q(2, 3));
  CHECK(d.conditionals.at({0, 1}).weight({0, 1}) == 1);
  for (const auto& [k, c] : d.conditionals) CHECK(c.is_probability());
  CHECK(reassemble(d) == m);
  CHECK(disintegrate(PairMeasure{}, proj).conditionals.empty());
}

TEST_CASE("uniform Z4/Z2 system: values, pushforward and induced quotient Haar") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const QuotientData qd = quotient_groupoid(g);
  const RelationalHaarSystem mu = uniform_split_haar(g, qd);
  for (Index x = 0; x < 4; ++x) {
    CHECK(mu.per_element[x].weights().size() == 8);
    for (const auto& [p, w] : mu.per_element[x].weights()) CHECK(w == q(1, 8));
  }
  const PairMeasure pushed = quotient_pushforward(qd, mu.per_element[1]);
  CHECK(pushed.weight({0, 1}) == q(1, 2));
  CHECK(pushed.weight({1, 0}) == q(1, 2));
  const RightHaarSystem nu = induced_quotient_haar(qd, mu);
  REQUIRE(nu.per_object.size() == 1);
  CHECK(nu.per_object[0].weight(0) == q(1, 2));
  CHECK(nu.per_object[0].weight(1) == q(1, 2));
  CHECK(pair_measure_from_haar(qd.quotient, nu, 1) == pushed);
  CHECK(check_relational_haar(g, qd, mu).all_passed());
  // Disintegration outside C is refused.
  const RelationalGroupoid iso = with_isolated_element(g);
  const QuotientData qi = quotient_groupoid(iso);
  PairMeasure stray;
  stray.set({4, 4}, 1);
  CHECK_THROWS_AS(disintegrate(qi, stray), MeasureError);
}

TEST_CASE("pair measure from a quotient Haar system") {
  const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b"}));
  const PairMeasure nu = pair_measure_from_haar(pair, counting_haar(pair), pair.unit(0));
  // (a,a) = (a,a) o (a,a) = (a,b) o (b,a).
  CHECK(nu.weights().size() == 2);
  CHECK(nu.total_mass() == 2);
}

TEST_CASE("relational Haar conditions report witnesses") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const QuotientData qd = quotient_groupoid(g);
  RelationalHaarSystem doubled = uniform_split_haar(g, qd);
  doubled.per_element[1] = doubled.per_element[1].scaled(2);
  const CheckReport r = check_relational_haar(g, qd, doubled);
  CHECK(r.find("support")->passed);
  REQUIRE_FALSE(r.find("(i)")->passed);
  CHECK(r.find("(i)")->witness == "(1,3)");

  RelationalHaarSystem off = uniform_split_haar(g, qd);
  off.per_element[0].set({0, 1}, 1);  // 0 + 1 is not in the class of 0
  const CheckReport s = check_relational_haar(g, qd, off);
  CHECK_FALSE(s.find("support")->passed);
  CHECK(s.find("support")->witness == "g=0 charges (0,1)");
  CHECK(s.entries.size() == 4);
  for (const char* id : {"(i)", "(ii)", "(iii)"}) CHECK(s.find(id)->description == "skipped");

  // Consistent per class but not right invariant on Z2.
  RelationalHaarSystem lopsided = uniform_split_haar(g, qd);
  for (Index x = 0; x < 4; ++x) {
    PairMeasure m;
    for (const auto& [p, w] : lopsided.per_element[x].weights()) m.set(p, qd.class_of[p.second] == 0 ? w : w * 2);
    lopsided.per_element[x] = m;
  }
  const CheckReport t = check_relational_haar(g, qd, lopsided);
  CHECK(t.find("(i)")->passed);
  CHECK_FALSE(t.find("(ii)")->passed);
}

TEST_CASE("classifiers on the Z4/Z2 systems") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const QuotientData qd = quotient_groupoid(g);

  const RelationalHaarSystem strong = uniform_split_haar(g, qd);
  CHECK(is_l2_invariant(g, strong).holds);
  CHECK(is_split(g, qd, strong).holds);
  const StrongSplitResult ss = is_strongly_split(g, qd, strong);
  CHECK(ss.holds);
  CHECK(ss.tau == uniform_class_measures(qd));

  const RelationalHaarSystem dirac = dirac_split_haar(g, qd);
  CHECK(dirac.per_element[0].weight({0, 0}) == q(1, 2));
  CHECK(dirac.per_element[0].weight({2, 2}) == 0);
  CHECK(dirac.per_element[0].weight({1, 3}) == q(1, 8));
  const Classification inv = is_l2_invariant(g, dirac);
  CHECK_FALSE(inv.holds);
  CHECK(inv.witness == "(0,2)");
  const SplitResult sp = is_split(g, qd, dirac);
  CHECK(sp.holds);
  CHECK(sp.tau[2].at(0) == PointMeasure::dirac(2));
  CHECK_FALSE(is_strongly_split(g, qd, dirac).holds);

  const RelationalHaarSystem shifted = shifted_unit_haar(g, qd);
  CHECK(is_l2_invariant(g, shifted).holds);
  CHECK(is_split(g, qd, shifted).holds);
  CHECK_FALSE(is_strongly_split(g, qd, shifted).holds);
  CHECK(shifted.per_element[0].weight({2, 2}) == q(1, 2));

  const RelationalHaarSystem ns = non_split_haar(g, qd);
  CHECK(is_l2_invariant(g, ns).holds);
  CHECK_FALSE(is_split(g, qd, ns).holds);
  CHECK_FALSE(is_strongly_split(g, qd, ns).holds);
  for (const auto* mu : {&strong, &dirac, &shifted, &ns}) CHECK(check_relational_haar(g, qd, *mu).all_passed());
}

TEST_CASE("Dirac measures at class representatives give a strongly split system") {
  const RelationalGroupoid g = cyclic_relational(6, 3);
  const QuotientData qd = quotient_groupoid(g);
  ClassMeasures tau;
  for (Index a = 0; a < qd.classes.size(); ++a) tau[a] = PointMeasure::dirac(qd.representative(a));
  const RelationalHaarSystem mu = build_strongly_split(g, qd, induced_quotient_haar(qd, uniform_split_haar(g, qd)), tau);
  CHECK(check_relational_haar(g, qd, mu).all_passed());
  const StrongSplitResult r = is_strongly_split(g, qd, mu);
  CHECK(r.holds);
  CHECK(r.tau == tau);
  // Every element charges only representative pairs.
  for (Index x = 0; x < g.size(); ++x) {
    for (const auto& [p, w] : mu.per_element[x].weights()) {
      CHECK(qd.representative(qd.class_of[p.first]) == p.first);
      CHECK(qd.representative(qd.class_of[p.second]) == p.second);
    }
  }
}

TEST_CASE("builders reject bad input") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const QuotientData qd = quotient_groupoid(g);
  const RightHaarSystem nu = normalized_counting_haar(qd.quotient);
  ClassMeasures half = uniform_class_measures(qd);
  half[0] = PointMeasure::uniform({0}, q(1, 2));
  CHECK_THROWS_AS(build_strongly_split(g, qd, nu, half), MeasureError);
  ClassMeasures misplaced = uniform_class_measures(qd);
  misplaced[0] = PointMeasure::dirac(1);
  CHECK_THROWS_AS(build_strongly_split(g, qd, nu, misplaced), MeasureError);
  ClassMeasures missing = uniform_class_measures(qd);
  missing.erase(1);
  CHECK_THROWS_AS(build_strongly_split(g, qd, nu, missing), MeasureError);
  CHECK_THROWS_AS(build_split(g, qd, nu, {}), MeasureError);
  CHECK_THROWS_AS(build_from_conditionals(g, qd, nu, [](Index, const Pair&) { return PairMeasure::dirac({0, 1}); }),
                  MeasureError);
  CHECK_THROWS_AS(build_from_conditionals(g, qd, RightHaarSystem{}, [](Index, const Pair&) { return PairMeasure{}; }),
                  MeasureError);
  RelationalHaarSystem short_mu;
  CHECK_THROWS_AS(is_l2_invariant(g, short_mu), MeasureError);
}

TEST_CASE("corpus: expected classification and general facts") {
  for (const auto& e : standard_corpus()) {
    CAPTURE(e.name);
    REQUIRE(e.haar.has_value());
    const auto& g = e.group;
    const QuotientData qd = quotient_groupoid(g);
    const auto& mu = *e.haar;
    const bool haar = check_relational_haar(g, qd, mu).all_passed();
    const bool inv = is_l2_invariant(g, mu).holds;
    const bool split = is_split(g, qd, mu).holds;
    const bool strong = is_strongly_split(g, qd, mu).holds;
    if (e.expected.haar) CHECK(haar == *e.expected.haar);
    if (e.expected.l2_invariant) CHECK(inv == *e.expected.l2_invariant);
    if (e.expected.split) CHECK(split == *e.expected.split);
    if (e.expected.strongly_split) CHECK(strong == *e.expected.strongly_split);
    if (strong) CHECK((split && inv));

    // L2-related elements carry the same total mass once (i) holds.
    for (const auto& t : g.l2().tuples()) {
      CHECK(mu.per_element[t[0]].total_mass() == mu.per_element[t[1]].total_mass());
    }
    CHECK(check_right_haar(qd.quotient, induced_quotient_haar(qd, mu)).holds);
    CHECK(check_support_in_constraint(g, mu).holds);
    CHECK(check_saturation_invariance(g, qd, mu).holds);
  }
}

TEST_CASE("embedded groupoids recover the groupoid Haar system") {
  const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b", "c"}));
  const RelationalGroupoid g = from_groupoid(pair);
  const QuotientData qd = quotient_groupoid(g);
  const RightHaarSystem h = counting_haar(pair);
  const RelationalHaarSystem mu = embedded_haar(g, qd, h);
  for (Index c = 0; c < pair.size(); ++c) {
    for (const auto& [p, w] : mu.per_element[c].weights()) {
      CHECK(pair.compose(p.first, p.second) == c);
      CHECK(w == h.per_object[pair.source(p.second)].weight(p.second));
    }
  }
}
