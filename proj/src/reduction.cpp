#include "relconv/reduction.hpp"

#include <algorithm>
#include <set>

#include "relconv/error.hpp"

namespace relconv {

std::vector<Index> constraint_set(const RelationalGroupoid& g) {
  std::vector<Index> c = g.constraint_elements();
  const EquivalenceCheck eq = is_equivalence(g.l2(), c);
  if (!eq.holds) {
    throw AxiomViolation("L2 is not an equivalence relation on C (" + eq.failed_property + " fails at " +
                         g.l2().format(eq.witness) + ")");
  }
  return c;
}

namespace {

Relation unit_relation(const RelationalGroupoid& g, bool unit_on_left) {
  const FiniteSet& G = g.carrier();
  std::vector<Relation::Tuple> pairs;
  for (const auto& t : g.l3().tuples()) {
    const Index c = unit_on_left ? t[1] : t[0];
    const Index l = unit_on_left ? t[0] : t[1];
    if (g.in_constraint(c) && g.in_l1(l)) pairs.push_back({c, l});
  }
  return Relation({G}, {G}, pairs);
}

std::string lbl(const RelationalGroupoid& g, Index i) { return g.carrier().label(i); }

}  // namespace

Relation left_unit_relation(const RelationalGroupoid& g) { return unit_relation(g, true); }
Relation right_unit_relation(const RelationalGroupoid& g) { return unit_relation(g, false); }

QuotientData quotient_groupoid(const RelationalGroupoid& g) {
  const std::vector<Index> c = constraint_set(g);
  const std::size_t n = g.size();

  std::vector<std::vector<Index>> classes;
  std::vector<Index> class_of(n, kUndefined);
  for (Index x : c) {
    if (class_of[x] != kUndefined) continue;
    const Index id = static_cast<Index>(classes.size());
    classes.emplace_back();
    for (Index y : c) {
      if (g.l2_related(x, y)) {
        classes.back().push_back(y);
        class_of[y] = id;
      }
    }
  }
  const std::size_t m = classes.size();

  // Multiplication, with a well-definedness witness on conflict.
  std::vector<Index> mult(m * m, kUndefined);
  std::vector<Relation::Tuple> first_triple(m * m);
  for (const auto& t : g.l3().tuples()) {
    for (Index v : t) {
      if (class_of[v] == kUndefined) {
        throw QuotientError("L3 triple " + g.l3().format(t) + " leaves the constraint set");
      }
    }
    const std::size_t slot = static_cast<std::size_t>(class_of[t[0]]) * m + class_of[t[1]];
    if (mult[slot] == kUndefined) {
      mult[slot] = class_of[t[2]];
      first_triple[slot] = t;
    } else if (mult[slot] != class_of[t[2]]) {
      throw QuotientError("multiplication is not well defined: " + g.l3().format(first_triple[slot]) + " and " +
                          g.l3().format(t));
    }
  }
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      if (mult[a * m + b] == kUndefined) continue;
      for (Index h : classes[a]) {
        for (Index k : classes[b]) {
          if (g.set_product(h, k).empty()) {
            throw QuotientError("multiplication is not well defined: " + lbl(g, h) + "*" + lbl(g, k) +
                                " is empty but its class product is not");
          }
        }
      }
    }
  }

  // Objects: classes inside L1.
  std::vector<Index> object_of_class(m, kUndefined);
  std::vector<Index> unit;
  std::vector<std::string> object_labels;
  for (Index a = 0; a < m; ++a) {
    const auto in_l1 = [&](Index x) { return g.in_l1(x); };
    const bool any = std::any_of(classes[a].begin(), classes[a].end(), in_l1);
    const bool all = std::all_of(classes[a].begin(), classes[a].end(), in_l1);
    if (any != all) throw QuotientError("L1 is not a union of L2-classes at " + lbl(g, classes[a].front()));
    if (!any) continue;
    object_of_class[a] = static_cast<Index>(unit.size());
    unit.push_back(a);
    object_labels.push_back(lbl(g, classes[a].front()));
  }

  auto unit_map = [&](const Relation& rel, const char* name) {
    std::vector<std::set<Index>> hits(m);
    for (const auto& t : rel.tuples()) hits[class_of[t[0]]].insert(object_of_class[class_of[t[1]]]);
    std::vector<Index> out(m);
    for (Index a = 0; a < m; ++a) {
      if (hits[a].size() != 1) {
        throw QuotientError(std::string(name) + " relation is not functional after reduction at class of " +
                            lbl(g, classes[a].front()) + " (" + std::to_string(hits[a].size()) + " units)");
      }
      out[a] = *hits[a].begin();
    }
    return out;
  };

  GroupoidData d;
  std::vector<std::string> labels;
  for (const auto& cl : classes) labels.push_back(lbl(g, cl.front()));
  d.morphisms = FiniteSet(std::move(labels));
  d.objects = FiniteSet(std::move(object_labels));
  d.source = unit_map(right_unit_relation(g), "source");
  d.target = unit_map(left_unit_relation(g), "target");
  d.mult = std::move(mult);
  d.unit = std::move(unit);
  d.inverse.resize(m);
  for (Index a = 0; a < m; ++a) {
    d.inverse[a] = class_of[g.inverse(classes[a].front())];
    for (Index x : classes[a]) {
      if (class_of[g.inverse(x)] != d.inverse[a]) {
        throw QuotientError("inverse is not well defined at " + lbl(g, x));
      }
    }
  }

  std::vector<Relation::Tuple> q_pairs;
  for (Index x : c) q_pairs.push_back({x, class_of[x]});
  Relation q({g.carrier()}, {d.morphisms}, q_pairs);

  if (auto v = find_groupoid_violation(d)) throw QuotientError("quotient is not a groupoid: " + *v);
  return QuotientData{std::move(classes), std::move(class_of), std::move(q), GroupoidTable(std::move(d))};
}

bool verify_q_morphism(const RelationalGroupoid& g, const QuotientData& qd) {
  const GroupoidTable& Q = qd.quotient;
  std::vector<Pair> graph;
  for (Index x = 0; x < g.size(); ++x) {
    const Index cls = qd.class_of.at(x);
    if (cls == kUndefined) continue;
    if (cls >= Q.size()) return false;
    graph.emplace_back(x, cls);
  }
  if (graph.empty()) return false;
  std::vector<std::string> labels;
  for (const auto& [x, a] : graph) labels.push_back("(" + g.carrier().label(x) + "," + Q.morphisms().label(a) + ")");
  const FiniteSet H(std::move(labels));
  auto find = [&](Index x, Index a) -> Index {
    auto it = std::lower_bound(graph.begin(), graph.end(), Pair{x, a});
    if (it == graph.end() || *it != Pair{x, a}) return kUndefined;
    return static_cast<Index>(it - graph.begin());
  };

  std::vector<Index> inv(graph.size());
  for (Index i = 0; i < graph.size(); ++i) {
    inv[i] = find(g.inverse(graph[i].first), Q.inverse(graph[i].second));
    if (inv[i] == kUndefined) return false;  // I x I does not preserve graph(q)
  }
  // L of the product restricted to graph(q)^3.
  std::vector<Relation::Tuple> triples;
  for (const auto& t : g.l().tuples()) {
    const Index a = qd.class_of.at(t[0]);
    const Index b = qd.class_of.at(t[1]);
    const Index c = qd.class_of.at(t[2]);
    if (a == kUndefined || b == kUndefined || c == kUndefined) continue;
    const auto ab = Q.compose(a, b);
    if (!ab || Q.inverse(*ab) != c) continue;
    triples.push_back({find(t[0], a), find(t[1], b), find(t[2], c)});
  }
  const RelationalGroupoid sub(H, Relation({H, H}, {H}, triples), std::move(inv), H.size());
  return check_axioms(sub).all_passed();
}

}  // namespace relconv
