#include "relconv/relational_groupoid.hpp"

#include <algorithm>

#include "relconv/error.hpp"

namespace relconv {

DerivedRelations derive_relations(const FiniteSet& carrier, const Relation& l, std::span<const Index> involution) {
  const Relation id = Relation::identity(carrier);
  const Relation i_graph = Relation::graph(carrier, carrier, involution);

  DerivedRelations d;
  d.l3 = compose(l, i_graph);
  std::vector<Relation::Tuple> inverse_pairs;
  inverse_pairs.reserve(carrier.size());
  for (Index g = 0; g < carrier.size(); ++g) inverse_pairs.push_back({g, involution[g]});
  const Relation i_subset({}, {carrier, carrier}, inverse_pairs);
  d.l1 = compose(i_subset, d.l3);
  d.l2 = compose(product(d.l1, id), d.l3);
  d.constraint = compose(Relation::full_subset(carrier), d.l2);
  return d;
}

RelationalGroupoid::RelationalGroupoid(FiniteSet carrier, Relation l, std::vector<Index> involution,
                                       std::size_t carrier_limit)
    : carrier_(std::move(carrier)), l_(std::move(l)), involution_(std::move(involution)) {
  if (carrier_.size() > carrier_limit) {
    throw CapacityError("carrier has " + std::to_string(carrier_.size()) + " elements, limit is " +
                        std::to_string(carrier_limit));
  }
  const std::vector<FiniteSet> gg{carrier_, carrier_};
  if (l_.domain() != gg || l_.codomain() != std::vector<FiniteSet>{carrier_}) {
    throw ArityMismatch(0, "L must be typed G x G -/-> G over the carrier");
  }
  if (involution_.size() != carrier_.size()) throw Error("I must be total on the carrier");
  for (Index v : involution_) {
    if (v >= carrier_.size()) throw Error("I maps outside the carrier");
  }
  i_graph_ = Relation::graph(carrier_, carrier_, involution_);
  derived_ = derive_relations(carrier_, l_, involution_);
  build_tables();
}

RelationalGroupoid RelationalGroupoid::from_l3(FiniteSet carrier, const Relation& l3, std::vector<Index> involution,
                                               std::size_t carrier_limit) {
  Relation l = compose(l3, Relation::graph(carrier, carrier, involution));
  return RelationalGroupoid(std::move(carrier), std::move(l), std::move(involution), carrier_limit);
}

RelationalGroupoid RelationalGroupoid::checked(FiniteSet carrier, Relation l, std::vector<Index> involution,
                                               std::size_t carrier_limit) {
  return checked(RelationalGroupoid(std::move(carrier), std::move(l), std::move(involution), carrier_limit));
}

RelationalGroupoid RelationalGroupoid::checked(RelationalGroupoid g) {
  const AxiomReport report = check_axioms(g);
  if (const AxiomEntry* f = report.first_failure()) {
    throw AxiomViolation("axiom " + f->id + " fails (" + f->description + "), witness " + f->witness);
  }
  g.validated_ = true;
  return g;
}

void RelationalGroupoid::build_tables() {
  const std::size_t n = size();
  l3_bits_.assign(n * n * n, 0);
  fibers_.assign(n, {});
  products_.assign(n * n, {});
  for (const auto& t : derived_.l3.tuples()) {
    l3_bits_[(static_cast<std::size_t>(t[0]) * n + t[1]) * n + t[2]] = 1;
    fibers_[t[2]].emplace_back(t[0], t[1]);
    products_[index2(t[0], t[1])].push_back(t[2]);
  }
  for (auto& f : fibers_) std::sort(f.begin(), f.end());
  l2_.assign(n * n, 0);
  for (const auto& t : derived_.l2.tuples()) l2_[index2(t[0], t[1])] = 1;
  in_l1_.assign(n, 0);
  for (const auto& t : derived_.l1.tuples()) in_l1_[t[0]] = 1;
  in_c_.assign(n, 0);
  for (const auto& t : derived_.constraint.tuples()) in_c_[t[0]] = 1;
}

std::vector<Index> RelationalGroupoid::constraint_elements() const {
  std::vector<Index> out;
  for (Index g = 0; g < size(); ++g) {
    if (in_c_[g]) out.push_back(g);
  }
  return out;
}

bool AxiomReport::all_passed() const { return first_failure() == nullptr; }

const AxiomEntry* AxiomReport::first_failure() const {
  for (const auto& e : entries) {
    if (!e.passed) return &e;
  }
  return nullptr;
}

AxiomReport check_axioms(const RelationalGroupoid& g) {
  const FiniteSet& G = g.carrier();
  const Relation id = Relation::identity(G);
  const Relation& I = g.involution_relation();
  const Relation& L = g.l();
  const Relation& L1 = g.l1();
  const Relation& L2 = g.l2();
  const Relation& L3 = g.l3();

  AxiomReport report;
  auto equal = [&](std::string id_, std::string desc, const Relation& lhs, const Relation& rhs) {
    AxiomEntry e{std::move(id_), std::move(desc), true, {}};
    if (auto w = first_difference(lhs, rhs)) {
      e.passed = false;
      e.witness = lhs.format(*w);
    }
    report.entries.push_back(std::move(e));
  };

  {
    AxiomEntry e{"A.1", "L is cyclically symmetric", true, {}};
    for (const auto& t : L.tuples()) {
      if (!L.contains({t[1], t[2], t[0]})) {
        e.passed = false;
        e.witness = L.format(t);
        break;
      }
    }
    report.entries.push_back(std::move(e));
  }
  equal("A.2", "I o I = id", compose(I, I), id);
  equal("A.3", "I o L = L o T o (I x I)", compose(L, I),
        compose(compose(product(I, I), Relation::transposition(G, G)), L));
  equal("A.4", "L3 o (L3 x id) = L3 o (id x L3)", compose(product(L3, id), L3), compose(product(id, L3), L3));
  equal("A.5", "L3 o (L1 x L1) = L1", compose(product(L1, L1), L3), L1);
  equal("A.6-i", "L3 o (L1 x id) = L3 o (id x L1)", L2, compose(product(id, L1), L3));
  equal("A.6-ii.1", "L2 o L1 = L1", compose(L1, L2), L1);
  equal("A.6-ii.2", "L2 o L2 = L2", compose(L2, L2), L2);
  equal("A.6-ii.3a", "L2 o L3 = L3", compose(L3, L2), L3);
  equal("A.6-ii.3b", "L3 o (L2 x L2) = L3", compose(product(L2, L2), L3), L3);
  equal("A.6-iii.a", "I o L2 = L2 o I", compose(L2, I), compose(I, L2));
  equal("A.6-iii.b", "L2 is symmetric", dagger(L2), L2);
  return report;
}

RelationalGroupoid from_group_and_normal_subgroup(const GroupoidTable& group, std::span<const Index> subgroup) {
  if (group.objects().size() != 1) throw Error("from_group_and_normal_subgroup: groupoid has more than one object");
  const std::size_t n = group.size();
  const Index e = group.unit(0);
  std::vector<char> in_h(n, 0);
  for (Index h : subgroup) {
    if (h >= n) throw Error("subgroup element out of range");
    in_h[h] = 1;
  }
  auto mul = [&](Index a, Index b) { return *group.compose(a, b); };
  const auto& labels = group.morphisms();
  if (!in_h[e]) throw Error("not a subgroup: identity " + labels.label(e) + " missing");
  for (Index a = 0; a < n; ++a) {
    if (!in_h[a]) continue;
    if (!in_h[group.inverse(a)]) throw Error("not a subgroup: inverse of " + labels.label(a) + " missing");
    for (Index b = 0; b < n; ++b) {
      if (in_h[b] && !in_h[mul(a, b)]) {
        throw Error("not a subgroup: " + labels.label(a) + "*" + labels.label(b) + " missing");
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index h = 0; h < n; ++h) {
      if (in_h[h] && !in_h[mul(mul(x, h), group.inverse(x))]) {
        throw Error("subgroup is not normal: conjugating " + labels.label(h) + " by " + labels.label(x) +
                    " leaves the subgroup");
      }
    }
  }
  std::vector<Relation::Key> keys;
  const FiniteSet& G = group.morphisms();
  Relation l3({G, G}, {G});
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index h = 0; h < n; ++h) {
        if (in_h[h]) keys.push_back(l3.encode(std::vector<Index>{a, b, mul(mul(a, b), h)}));
      }
    }
  }
  l3 = Relation::from_keys({G, G}, {G}, std::move(keys));
  std::vector<Index> inv(n);
  for (Index a = 0; a < n; ++a) inv[a] = group.inverse(a);
  return RelationalGroupoid::checked(RelationalGroupoid::from_l3(G, l3, std::move(inv)));
}

RelationalGroupoid from_groupoid(const GroupoidTable& groupoid) {
  const FiniteSet& G = groupoid.morphisms();
  const Index n = static_cast<Index>(G.size());
  std::vector<Relation::Tuple> triples;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (auto ab = groupoid.compose(a, b)) triples.push_back({a, b, groupoid.inverse(*ab)});
    }
  }
  std::vector<Index> inv(n);
  for (Index a = 0; a < n; ++a) inv[a] = groupoid.inverse(a);
  return RelationalGroupoid::checked(G, Relation({G, G}, {G}, triples), std::move(inv));
}

RelationalGroupoid relational_pair_groupoid(const FiniteSet& x, const Relation& r) {
  if (r.domain() != std::vector<FiniteSet>{x} || r.codomain() != std::vector<FiniteSet>{x}) {
    throw ArityMismatch(0, "relational_pair_groupoid: r must be an endorelation on x");
  }
  std::vector<Index> all(x.size());
  for (Index i = 0; i < x.size(); ++i) all[i] = i;
  const EquivalenceCheck eq = is_equivalence(r, all);
  if (!eq.holds) {
    throw Error("relational_pair_groupoid: r is not an equivalence relation (" + eq.failed_property +
                " fails at " + r.format(eq.witness) + ")");
  }
  const Index p = static_cast<Index>(x.size());
  std::vector<std::vector<Index>> cls(p);
  for (const auto& t : r.tuples()) cls[t[0]].push_back(t[1]);

  std::vector<std::string> labels;
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) labels.push_back("(" + x.label(a) + "," + x.label(b) + ")");
  }
  const FiniteSet G(std::move(labels));
  auto id = [p](Index a, Index b) { return a * p + b; };
  std::vector<Relation::Tuple> triples;
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) {
      for (Index b2 : cls[b]) {
        for (Index c = 0; c < p; ++c) {
          for (Index a2 : cls[a]) {
            for (Index c2 : cls[c]) triples.push_back({id(a, b), id(b2, c), id(a2, c2)});
          }
        }
      }
    }
  }
  std::vector<Index> inv(static_cast<std::size_t>(p) * p);
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) inv[id(a, b)] = id(b, a);
  }
  return RelationalGroupoid::checked(
      RelationalGroupoid::from_l3(G, Relation({G, G}, {G}, triples), std::move(inv)));
}

Relation action_relation(const RelationalGroupoid& g, std::span<const Index> subset, Side side) {
  const FiniteSet& G = g.carrier();
  std::vector<char> in_s(G.size(), 0);
  for (Index s : subset) in_s.at(s) = 1;
  std::vector<Relation::Tuple> pairs;
  for (Index k = 0; k < G.size(); ++k) {
    for (const auto& [a, b] : g.fiber(k)) {
      if (side == Side::right && in_s[b]) pairs.push_back({a, k});
      if (side == Side::left && in_s[a]) pairs.push_back({b, k});
    }
  }
  return Relation({G}, {G}, pairs);
}

Relation fiber_relation(const RelationalGroupoid& g, Index k) {
  std::vector<Relation::Tuple> pairs;
  for (const auto& [a, b] : g.fiber(k)) pairs.push_back({a, b});
  return Relation({}, {g.carrier(), g.carrier()}, pairs);
}

}  // namespace relconv
