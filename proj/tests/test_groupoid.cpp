#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "relconv/error.hpp"
#include "relconv/generators.hpp"
#include "relconv/properties.hpp"
#include "relconv/reduction.hpp"
#include "relconv/relational_groupoid.hpp"

using namespace relconv;

namespace {

std::vector<Index> elements(const Relation& subset) {
  std::vector<Index> out;
  for (const auto& t : subset.tuples()) out.push_back(t[0]);
  return out;
}

std::vector<std::string> pair_labels(const RelationalGroupoid& g, Index k) {
  std::vector<std::string> out;
  for (const auto& [a, b] : g.fiber(k)) out.push_back("(" + g.carrier().label(a) + "," + g.carrier().label(b) + ")");
  std::sort(out.begin(), out.end());
  return out;
}

RelationalGroupoid relpair(std::size_t points, bool total) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points; ++i) labels.push_back(std::string(1, char('a' + i)));
  const FiniteSet x(labels);
  std::vector<Relation::Tuple> r;
  for (Index i = 0; i < points; ++i) {
    for (Index j = 0; j < points; ++j) {
      if (total || i == j) r.push_back({i, j});
    }
  }
  return relational_pair_groupoid(x, Relation({x}, {x}, r));
}

}  // namespace

TEST_CASE("derived relations of Z4/Z2 match their definitions") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  CHECK(elements(g.l1()) == std::vector<Index>{0, 2});
  for (Index a = 0; a < 4; ++a) {
    for (Index b = 0; b < 4; ++b) CHECK(g.l2_related(a, b) == ((a + 4 - b) % 2 == 0));
  }
  CHECK(g.constraint_elements() == std::vector<Index>{0, 1, 2, 3});

  const oracle::Derived d = oracle::derive(4, oracle::tuples(g.l()), {g.involution().begin(), g.involution().end()});
  CHECK(oracle::tuples(g.l1()) == d.l1);
  CHECK(oracle::tuples(g.l2()) == d.l2);
  CHECK(oracle::tuples(g.l3()) == d.l3);
  CHECK(oracle::tuples(g.constraint_relation()) == d.c);
}

TEST_CASE("derived relations agree with the oracle across the corpus") {
  for (const auto& e : standard_corpus()) {
    CAPTURE(e.name);
    const auto& g = e.group;
    const oracle::Derived d =
        oracle::derive(g.size(), oracle::tuples(g.l()), {g.involution().begin(), g.involution().end()});
    CHECK(oracle::tuples(g.l1()) == d.l1);
    CHECK(oracle::tuples(g.l2()) == d.l2);
    CHECK(oracle::tuples(g.l3()) == d.l3);
    CHECK(oracle::tuples(g.constraint_relation()) == d.c);
  }
}

TEST_CASE("embedded groupoids: unit section, diagonal L2, full constraint set") {
  const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b", "c"}));
  const RelationalGroupoid g = from_groupoid(pair);
  std::vector<Index> units;
  for (Index x = 0; x < pair.objects().size(); ++x) units.push_back(pair.unit(x));
  std::sort(units.begin(), units.end());
  CHECK(elements(g.l1()) == units);
  CHECK(g.l2() == Relation::identity(g.carrier()));
  CHECK(g.constraint_elements().size() == g.size());
  CHECK(check_axioms(g).all_passed());
}

TEST_CASE("trivial subgroup gives the diagonal") {
  const RelationalGroupoid g = from_group_and_normal_subgroup(symmetric_group(3), std::vector<Index>{0});
  CHECK(g.l2() == Relation::identity(g.carrier()));
  CHECK(g.constraint_elements().size() == 6);
}

TEST_CASE("check_axioms passes on the positive examples") {
  CHECK(check_axioms(cyclic_relational(4, 2)).all_passed());
  CHECK(check_axioms(cyclic_relational(6, 2)).all_passed());
  const GroupoidTable s3 = symmetric_group(3);
  CHECK(check_axioms(from_group_and_normal_subgroup(s3, alternating_subgroup(s3))).all_passed());
  CHECK(check_axioms(from_groupoid(GroupoidTable::pair(FiniteSet({"a", "b", "c"})))).all_passed());
  CHECK(check_axioms(relpair(3, false)).all_passed());
  CHECK(check_axioms(relpair(2, true)).all_passed());
  const AxiomReport r = check_axioms(cyclic_relational(4, 2));
  CHECK(r.entries.size() == 12);
  CHECK(r.first_failure() == nullptr);
}

TEST_CASE("every single-tuple deletion from Z4/Z2 breaks an axiom") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  for (const auto& t : g.l3().tuples()) {
    const AxiomReport r = check_axioms(drop_l3_tuple(g, t));
    CAPTURE(g.l3().format(t));
    REQUIRE_FALSE(r.all_passed());
    CHECK_FALSE(r.first_failure()->witness.empty());
  }
}

TEST_CASE("from_group_and_normal_subgroup") {
  const RelationalGroupoid z4 = from_group_and_normal_subgroup(cyclic_group(4), std::vector<Index>{0, 2});
  CHECK(z4.l3().size() == 32);
  CHECK(z4.l3().size() == 4 * 4 * 2);
  CHECK(z4.validated());
  const RelationalGroupoid raw(z4.carrier(), z4.l(), {z4.involution().begin(), z4.involution().end()});
  CHECK_FALSE(raw.validated());
  CHECK(RelationalGroupoid::checked(raw).validated());

  const GroupoidTable s3 = symmetric_group(3);
  const RelationalGroupoid g = from_group_and_normal_subgroup(s3, alternating_subgroup(s3));
  CHECK(quotient_groupoid(g).quotient.size() == 2);

  // {0, 1} is not closed in Z4.
  CHECK_THROWS_AS(from_group_and_normal_subgroup(cyclic_group(4), std::vector<Index>{0, 1}), Error);
  // A transposition subgroup of S3 is not normal; the message names a conjugate.
  const std::vector<Index> t = {s3.morphisms().index_of("012"), s3.morphisms().index_of("021")};
  try {
    (void)from_group_and_normal_subgroup(s3, t);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("conjugat") != std::string::npos);
  }
}

TEST_CASE("from_groupoid examples") {
  const RelationalGroupoid pair = from_groupoid(GroupoidTable::pair(FiniteSet({"a", "b"})));
  CHECK(pair.l3().size() == 8);
  const RelationalGroupoid z3 = from_groupoid(cyclic_group(3));
  std::vector<Relation::Tuple> expected;
  for (Index a = 0; a < 3; ++a) {
    for (Index b = 0; b < 3; ++b) expected.push_back({a, b, (a + b) % 3});
  }
  CHECK(z3.l3() == Relation({z3.carrier(), z3.carrier()}, {z3.carrier()}, expected));
  GroupoidData bad = GroupoidTable::pair(FiniteSet({"a", "b"})).data();
  bad.mult[0] = 1;
  CHECK_THROWS_AS(GroupoidTable{bad}, InvalidGroupoid);
}

TEST_CASE("relational pair groupoids") {
  const RelationalGroupoid id3 = relpair(3, false);
  const QuotientData q = quotient_groupoid(id3);
  CHECK(q.quotient.size() == 9);
  CHECK(q.quotient.objects().size() == 3);
  const RelationalGroupoid tot2 = relpair(2, true);
  CHECK(tot2.constraint_elements().size() == 4);
  CHECK(quotient_groupoid(tot2).quotient.size() == 1);
  const RelationalGroupoid one = relpair(1, false);
  CHECK(one.size() == 1);
  CHECK(quotient_groupoid(one).quotient.size() == 1);
  const FiniteSet x({"a", "b"});
  CHECK_THROWS(relational_pair_groupoid(x, Relation({x}, {x}, {{0, 1}})));
}

TEST_CASE("fibers of Z4/Z2") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const std::vector<std::string> f0 = {"(0,0)", "(1,1)", "(2,2)", "(3,3)", "(0,2)", "(2,0)", "(1,3)", "(3,1)"};
  const std::vector<std::string> f1 = {"(1,0)", "(0,1)", "(1,2)", "(2,1)", "(3,0)", "(0,3)", "(2,3)", "(3,2)"};
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(pair_labels(g, 0) == sorted(f0));
  CHECK(pair_labels(g, 1) == sorted(f1));
  const RelationalGroupoid iso = with_isolated_element(g);
  CHECK(iso.fiber(4).empty());
  CHECK_FALSE(iso.in_constraint(4));
}

TEST_CASE("set products") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  CHECK(g.set_product(1, 1) == std::vector<Index>{0, 2});
  const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b"}));
  const RelationalGroupoid p = from_groupoid(pair);
  for (Index a = 0; a < pair.size(); ++a) {
    for (Index b = 0; b < pair.size(); ++b) {
      auto ab = pair.compose(a, b);
      if (ab) {
        CHECK(p.set_product(a, b) == std::vector<Index>{*ab});
      } else {
        CHECK(p.set_product(a, b).empty());
      }
    }
  }
}

TEST_CASE("relational actions") {
  const RelationalGroupoid g = cyclic_relational(4, 2);
  const std::vector<Index> units = elements(g.l1());
  // The self-action restricted to L1 gives L2.
  CHECK(action_relation(g, units, Side::right) == g.l2());
  const Index one[] = {1};
  const Relation r1 = action_relation(g, one, Side::right);
  CHECK(compose(r1, r1) == action_relation(g, g.set_product(1, 1), Side::right));
  CHECK(action_relation(g, std::vector<Index>{}, Side::right).empty());
  CHECK(action_relation(g, one, Side::left) == r1);  // abelian
}

TEST_CASE("presentation round trip: L = I o L3") {
  for (const auto& e : standard_corpus()) {
    CAPTURE(e.name);
    const RelationalGroupoid back =
        RelationalGroupoid::from_l3(e.group.carrier(), e.group.l3(), {e.group.involution().begin(), e.group.involution().end()});
    CHECK(back.l() == e.group.l());
  }
}

TEST_CASE("fiber and action properties hold on the corpus") {
  for (const auto& e : standard_corpus()) {
    CAPTURE(e.name);
    const auto& g = e.group;
    CHECK(check_fiber_partition(g).holds);
    CHECK(check_right_translation(g).holds);
    CHECK(check_left_translation(g).holds);
    CHECK(check_two_sided_translation(g).holds);
    CHECK(check_action_composition(g).holds);
    CHECK(check_self_action(g).holds);
  }
}

TEST_CASE("fiber partition matches a direct oracle") {
  const RelationalGroupoid g = with_isolated_element(cyclic_relational(6, 3));
  for (Index a = 0; a < g.size(); ++a) {
    for (Index b = 0; b < g.size(); ++b) {
      if (a == b || (!g.in_constraint(a) && !g.in_constraint(b))) continue;
      std::set<Pair> fa(g.fiber(a).begin(), g.fiber(a).end()), fb(g.fiber(b).begin(), g.fiber(b).end());
      if (g.l2_related(a, b)) {
        CHECK(fa == fb);
      } else {
        for (const auto& p : fa) CHECK(fb.count(p) == 0);
      }
    }
  }
}
