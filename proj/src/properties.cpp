#include "relconv/properties.hpp"

#include <algorithm>
#include <map>

#include "relconv/convolution.hpp"

namespace relconv {

namespace {

std::string lbl(const RelationalGroupoid& g, Index i) { return g.carrier().label(i); }
std::string pair_str(const RelationalGroupoid& g, Index a, Index b) { return "(" + lbl(g, a) + "," + lbl(g, b) + ")"; }

Relation single_action(const RelationalGroupoid& g, Index s, Side side) {
  const Index subset[] = {s};
  return action_relation(g, subset, side);
}

/// Per-element fibers, one-sided actions and their products with the
/// identity, computed once per check.
struct Tables {
  std::vector<Relation> fiber, left, right, left_x_id, id_x_right;
  std::map<std::vector<Index>, Relation> fiber_of_set;

  explicit Tables(const RelationalGroupoid& g) {
    const Relation id = Relation::identity(g.carrier());
    for (Index h = 0; h < g.size(); ++h) {
      fiber.push_back(fiber_relation(g, h));
      left.push_back(single_action(g, h, Side::left));
      right.push_back(single_action(g, h, Side::right));
      left_x_id.push_back(product(left.back(), id));
      id_x_right.push_back(product(id, right.back()));
    }
  }

  /// G2 of the set gh, i.e. the union of the fibers of its elements.
  const Relation& union_of_fibers(const RelationalGroupoid& g, const std::vector<Index>& set) {
    auto it = fiber_of_set.find(set);
    if (it != fiber_of_set.end()) return it->second;
    const FiniteSet& G = g.carrier();
    Relation out({}, {G, G});
    for (Index k : set) out = set_union(out, fiber[k]);
    return fiber_of_set.emplace(set, std::move(out)).first->second;
  }
};

template <class F>
Classification for_composable(const RelationalGroupoid& g, F&& body) {
  for (Index a = 0; a < g.size(); ++a) {
    for (Index b = 0; b < g.size(); ++b) {
      if (g.set_product(a, b).empty()) continue;
      if (auto bad = body(a, b)) return {false, *bad};
    }
  }
  return {};
}

std::optional<std::string> mismatch(const Relation& lhs, const Relation& rhs, const std::string& where) {
  if (auto w = first_difference(lhs, rhs)) {
    const Relation& fmt = lhs.contains(*w) ? lhs : rhs;
    return where + ": differs at " + fmt.format(*w);
  }
  return std::nullopt;
}

}  // namespace

Classification check_fiber_partition(const RelationalGroupoid& g) {
  for (Index a = 0; a < g.size(); ++a) {
    for (Index b = a + 1; b < g.size(); ++b) {
      if (!g.in_constraint(a) && !g.in_constraint(b)) continue;
      const auto& fa = g.fiber(a);
      const auto& fb = g.fiber(b);
      if (g.l2_related(a, b)) {
        if (fa != fb) return {false, pair_str(g, a, b) + " are L2-related but have different fibers"};
        continue;
      }
      std::vector<Pair> common;
      std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
      if (!common.empty()) {
        return {false, pair_str(g, a, b) + " are not L2-related but share " + pair_str(g, common[0].first, common[0].second)};
      }
    }
  }
  return {};
}

Classification check_right_translation(const RelationalGroupoid& g) {
  Tables t(g);
  return for_composable(g, [&](Index a, Index b) {
    const Relation lhs = compose(t.fiber[a], t.id_x_right[b]);
    return mismatch(lhs, t.union_of_fibers(g, g.set_product(a, b)), "g,h=" + pair_str(g, a, b));
  });
}

Classification check_left_translation(const RelationalGroupoid& g) {
  Tables t(g);
  return for_composable(g, [&](Index a, Index b) {
    const Relation lhs = compose(t.fiber[b], t.left_x_id[a]);
    return mismatch(lhs, t.union_of_fibers(g, g.set_product(a, b)), "g,h=" + pair_str(g, a, b));
  });
}

Classification check_two_sided_translation(const RelationalGroupoid& g) {
  Tables t(g);
  // L x R = (L x id) then (id x R).
  return for_composable(g, [&](Index a, Index b) {
    const Relation lhs = compose(compose(t.fiber[a], t.left_x_id[g.inverse(a)]), t.id_x_right[b]);
    return mismatch(lhs, t.fiber[b], "g,h=" + pair_str(g, a, b));
  });
}

Classification check_action_composition(const RelationalGroupoid& g) {
  Tables t(g);
  std::map<std::vector<Index>, Relation> by_set;
  for (Index a = 0; a < g.size(); ++a) {
    for (Index b = 0; b < g.size(); ++b) {
      const auto& set = g.set_product(a, b);
      auto it = by_set.find(set);
      if (it == by_set.end()) it = by_set.emplace(set, action_relation(g, set, Side::right)).first;
      if (auto bad = mismatch(compose(t.right[a], t.right[b]), it->second, "g,h=" + pair_str(g, a, b))) {
        return {false, *bad};
      }
    }
  }
  return {};
}

Classification check_self_action(const RelationalGroupoid& g) {
  const Relation id = Relation::identity(g.carrier());
  const Relation& l3 = g.l3();
  if (auto bad = mismatch(compose(product(l3, id), l3), compose(product(id, l3), l3), "rho o (rho x id)")) {
    return {false, *bad};
  }
  std::vector<Index> units;
  for (const auto& t : g.l1().tuples()) units.push_back(t[0]);
  if (auto bad = mismatch(action_relation(g, units, Side::right), g.l2(), "R_{L1} vs L2")) return {false, *bad};
  return {};
}

Classification check_unit_relations(const RelationalGroupoid& g) {
  const Relation& i = g.involution_relation();
  const Relation rhs = compose(compose(i, left_unit_relation(g)), i);
  if (auto bad = mismatch(right_unit_relation(g), rhs, "right units vs I o left units o I")) return {false, *bad};
  return {};
}

Classification check_fiber_quotient(const RelationalGroupoid& g, const QuotientData& qd) {
  const GroupoidTable& Q = qd.quotient;
  for (Index x : g.constraint_elements()) {
    std::vector<Pair> image;
    for (const Pair& p : g.fiber(x)) image.push_back(qd.project(p));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<Pair> expected;
    for (Index a = 0; a < Q.size(); ++a) {
      for (Index b = 0; b < Q.size(); ++b) {
        auto ab = Q.compose(a, b);
        if (ab && *ab == qd.class_of[x]) expected.emplace_back(a, b);
      }
    }
    if (image != expected) return {false, "g=" + lbl(g, x) + ": q does not map the fiber onto the quotient fiber"};
    for (const Pair& cls : image) {
      std::size_t count = 0;
      for (const Pair& p : g.fiber(x)) count += qd.project(p) == cls;
      if (count != qd.classes[cls.first].size() * qd.classes[cls.second].size()) {
        return {false, "g=" + lbl(g, x) + ": preimage of a quotient pair is not a product of classes"};
      }
    }
  }
  return {};
}

Classification check_support_in_constraint(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  const std::size_t n = g.size();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const AlgebraElement p = convolve(g, mu, AlgebraElement::delta(n, a), AlgebraElement::delta(n, b));
      for (Index z : p.support()) {
        if (!g.in_constraint(z)) return {false, "d" + lbl(g, a) + " * d" + lbl(g, b) + " is nonzero at " + lbl(g, z)};
      }
    }
  }
  return {};
}

Classification check_saturation_invariance(const RelationalGroupoid& g, const QuotientData& qd,
                                           const RelationalHaarSystem& mu) {
  std::vector<Relation> right;
  for (Index h = 0; h < g.size(); ++h) right.push_back(single_action(g, h, Side::right));
  for (const auto& t : g.l3().tuples()) {
    const Index x = t[0], h = t[1], k = t[2];
    std::map<Pair, std::vector<Pair>> blocks;
    for (const Pair& p : g.fiber(x)) blocks[qd.project(p)].push_back(p);
    for (const auto& [cls, block] : blocks) {
      Rational before = 0, after = 0;
      std::vector<Pair> image;
      for (const auto& [a, b] : block) {
        before += mu.per_element[x].weight({a, b});
        for (const auto& r : right[h].tuples()) {
          if (r[0] == b) image.emplace_back(a, r[1]);
        }
      }
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      for (const Pair& p : image) after += mu.per_element[k].weight(p);
      if (before != after) {
        return {false, "(g,h,k)=(" + lbl(g, x) + "," + lbl(g, h) + "," + lbl(g, k) + "): mass " + to_string(before) +
                           " becomes " + to_string(after)};
      }
    }
  }
  return {};
}

}  // namespace relconv
