#include "relconv/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "relconv/error.hpp"

namespace relconv {

namespace {

using Table = std::vector<std::vector<Index>>;

std::string perm_label(const std::vector<int>& p) {
  std::string s;
  for (int v : p) s += std::to_string(v);
  return s;
}

bool is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  }
  return inversions % 2 == 0;
}

std::vector<int> parse_perm(const std::string& s) {
  std::vector<int> p;
  for (char c : s) p.push_back(c - '0');
  return p;
}

RelationalGroupoid rebuild(const RelationalGroupoid& g, std::vector<Relation::Key> keys, std::vector<Index> inv) {
  const FiniteSet& G = g.carrier();
  return RelationalGroupoid::from_l3(G, Relation::from_keys({G, G}, {G}, std::move(keys)), std::move(inv));
}

std::vector<Index> involution_vector(const RelationalGroupoid& g) {
  return {g.involution().begin(), g.involution().end()};
}

RightHaarSystem normalized_quotient_haar(const QuotientData& qd) { return normalized_counting_haar(qd.quotient); }

PointMeasure uniform_on(const std::vector<Index>& cls) {
  return PointMeasure::uniform(cls, Rational(1, static_cast<unsigned long>(cls.size())));
}

AlgebraElement indicator(std::size_t n, std::initializer_list<Index> xs) {
  AlgebraElement f(n);
  for (Index x : xs) f[x] = Complex(1);
  return f;
}

}  // namespace

GroupoidTable cyclic_group(std::size_t n) {
  if (n == 0) throw Error("cyclic group of order 0");
  Table t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) t[a][b] = static_cast<Index>((a + b) % n);
  }
  return GroupoidTable::group(FiniteSet::range(n), t);
}

GroupoidTable dihedral_group(std::size_t n) {
  if (n == 0) throw Error("dihedral group needs n >= 1");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  // Index i < n is r^i, index n + i is r^i s.
  const auto mod = [n](long v) { return static_cast<Index>(((v % long(n)) + long(n)) % long(n)); };
  Table t(2 * n, std::vector<Index>(2 * n));
  for (Index a = 0; a < 2 * n; ++a) {
    for (Index b = 0; b < 2 * n; ++b) {
      const long i = a % n, j = b % n;
      const bool sa = a >= n, sb = b >= n;
      if (!sa && !sb) t[a][b] = mod(i + j);
      if (!sa && sb) t[a][b] = static_cast<Index>(n) + mod(i + j);
      if (sa && !sb) t[a][b] = static_cast<Index>(n) + mod(i - j);
      if (sa && sb) t[a][b] = mod(i - j);
    }
  }
  return GroupoidTable::group(FiniteSet(std::move(labels)), t);
}

GroupoidTable symmetric_group(std::size_t degree) {
  if (degree == 0 || degree > 5) throw Error("symmetric groups are provided for degree 1..5");
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(perm_label(q));
  const FiniteSet set(labels);
  // (a b)(i) = a(b(i)).
  Table t(perms.size(), std::vector<Index>(perms.size()));
  for (Index a = 0; a < perms.size(); ++a) {
    for (Index b = 0; b < perms.size(); ++b) {
      std::vector<int> c(degree);
      for (std::size_t i = 0; i < degree; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = set.index_of(perm_label(c));
    }
  }
  return GroupoidTable::group(set, t);
}

std::vector<Index> alternating_subgroup(const GroupoidTable& symmetric) {
  std::vector<Index> out;
  for (Index a = 0; a < symmetric.size(); ++a) {
    if (is_even(parse_perm(symmetric.morphisms().label(a)))) out.push_back(a);
  }
  return out;
}

std::vector<Index> klein_subgroup(const GroupoidTable& s4) {
  std::vector<Index> out;
  for (const char* l : {"0123", "1032", "2301", "3210"}) out.push_back(s4.morphisms().index_of(l));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> dihedral_rotation_subgroup(std::size_t n, std::size_t d) {
  if (d == 0 || n % d != 0) throw Error("rotation subgroup needs d | n");
  std::vector<Index> out;
  for (std::size_t i = 0; i < n; i += d) out.push_back(static_cast<Index>(i));
  return out;
}

RelationalGroupoid cyclic_relational(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0 || n % m != 0) {
    throw Error("cyclic_relational(" + std::to_string(n) + ", " + std::to_string(m) + "): m must divide n");
  }
  std::vector<Index> h;
  for (std::size_t i = 0; i < n; i += m) h.push_back(static_cast<Index>(i));
  return from_group_and_normal_subgroup(cyclic_group(n), h);
}

RelationalGroupoid dihedral_relational(std::size_t n, std::size_t d) {
  return from_group_and_normal_subgroup(dihedral_group(n), dihedral_rotation_subgroup(n, d));
}

NamedRelationalGroup random_relational_group(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto divisor = [&](std::size_t n) {
    std::vector<std::size_t> ds;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) ds.push_back(d);
    }
    return ds[pick(0, ds.size() - 1)];
  };
  if (pick(0, 1) == 0) {
    const std::size_t n = pick(1, 24);
    const std::size_t m = divisor(n);
    return {"Z" + std::to_string(n) + "/<" + std::to_string(m) + ">", cyclic_relational(n, m)};
  }
  const std::size_t n = pick(1, 12);
  const std::size_t d = divisor(n);
  return {"D" + std::to_string(n) + "/<r" + std::to_string(d) + ">", dihedral_relational(n, d)};
}

ActionGroupoid action_groupoid(const GroupoidTable& group, const FiniteSet& points, const Table& act) {
  if (group.objects().size() != 1) throw Error("action_groupoid expects a group");
  const std::size_t ng = group.size(), nx = points.size();
  if (act.size() != ng) throw Error("action table needs one row per group element");
  for (const auto& row : act) {
    if (row.size() != nx) throw Error("action table needs one column per point");
    for (Index y : row) {
      if (y >= nx) throw Error("action table entry out of range");
    }
  }
  const Index e = group.unit(0);
  for (Index x = 0; x < nx; ++x) {
    if (act[e][x] != x) throw Error("identity does not act trivially on " + points.label(x));
    for (Index a = 0; a < ng; ++a) {
      for (Index b = 0; b < ng; ++b) {
        if (act[*group.compose(a, b)][x] != act[a][act[b][x]]) {
          throw Error("action is not compatible with multiplication at (" + group.morphisms().label(a) + "," +
                      group.morphisms().label(b) + "," + points.label(x) + ")");
        }
      }
    }
  }
  // Morphism (a, x) has index a * nx + x.
  GroupoidData d;
  std::vector<std::string> labels;
  for (Index a = 0; a < ng; ++a) {
    for (Index x = 0; x < nx; ++x) labels.push_back("(" + group.morphisms().label(a) + "," + points.label(x) + ")");
  }
  d.morphisms = FiniteSet(std::move(labels));
  d.objects = points;
  const std::size_t n = ng * nx;
  d.source.resize(n);
  d.target.resize(n);
  d.inverse.resize(n);
  d.mult.assign(n * n, kUndefined);
  for (Index a = 0; a < ng; ++a) {
    for (Index x = 0; x < nx; ++x) {
      const Index m = a * nx + x;
      d.source[m] = x;
      d.target[m] = act[a][x];
      d.inverse[m] = group.inverse(a) * nx + act[a][x];
    }
  }
  for (Index m1 = 0; m1 < n; ++m1) {
    for (Index m2 = 0; m2 < n; ++m2) {
      if (d.target[m2] != d.source[m1]) continue;
      d.mult[m1 * n + m2] = *group.compose(m1 / nx, m2 / nx) * nx + d.source[m2];
    }
  }
  for (Index x = 0; x < nx; ++x) d.unit.push_back(e * nx + x);
  GroupoidTable table(std::move(d));

  RightHaarSystem h;
  for (Index x = 0; x < nx; ++x) {
    h.per_object.push_back(PointMeasure::uniform(table.source_fiber(x), Rational(1, static_cast<unsigned long>(ng))));
  }
  return {std::move(table), std::move(h)};
}

RelationalGroupoid drop_l3_tuple(const RelationalGroupoid& g, const Relation::Tuple& t) {
  std::vector<Relation::Key> keys = g.l3().keys();
  const Relation::Key k = g.l3().encode(t);
  keys.erase(std::remove(keys.begin(), keys.end(), k), keys.end());
  return rebuild(g, std::move(keys), involution_vector(g));
}

RelationalGroupoid add_l3_tuple(const RelationalGroupoid& g, const Relation::Tuple& t) {
  std::vector<Relation::Key> keys = g.l3().keys();
  keys.push_back(g.l3().encode(t));
  return rebuild(g, std::move(keys), involution_vector(g));
}

RelationalGroupoid swap_involution(const RelationalGroupoid& g, Index a, Index b) {
  std::vector<Index> inv = involution_vector(g);
  std::swap(inv.at(a), inv.at(b));
  return rebuild(g, g.l3().keys(), std::move(inv));
}

RelationalGroupoid mutate(const RelationalGroupoid& g, Mutation op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = g.size();
  if (n == 0) throw Error("cannot mutate an empty relational groupoid");
  auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi - 1)(rng); };
  switch (op) {
    case Mutation::drop_tuple: {
      if (g.l3().empty()) throw Error("L3 is empty; nothing to drop");
      return drop_l3_tuple(g, g.l3().tuple(pick(g.l3().size())));
    }
    case Mutation::add_tuple: {
      const std::size_t space = n * n * n;
      if (g.l3().size() == space) throw Error("L3 is full; nothing to add");
      std::vector<Relation::Key> missing;
      std::size_t i = 0;
      for (Relation::Key k = 0; k < space; ++k) {
        while (i < g.l3().size() && g.l3().keys()[i] < k) ++i;
        if (i == g.l3().size() || g.l3().keys()[i] != k) missing.push_back(k);
      }
      return add_l3_tuple(g, g.l3().decode(missing[pick(missing.size())]));
    }
    case Mutation::swap_involution: {
      const auto a = static_cast<Index>(pick(n));
      const auto b = static_cast<Index>(pick(n));
      return swap_involution(g, a, b);
    }
  }
  throw Error("unknown mutation");
}

RelationalGroupoid with_isolated_element(const RelationalGroupoid& g, const std::string& label) {
  std::vector<std::string> labels = g.carrier().labels();
  labels.push_back(label);
  const FiniteSet G(std::move(labels));
  std::vector<Relation::Tuple> triples = g.l().tuples();
  std::vector<Index> inv = involution_vector(g);
  inv.push_back(static_cast<Index>(g.size()));
  return RelationalGroupoid(G, Relation({G, G}, {G}, triples), std::move(inv));
}

RelationalHaarSystem uniform_split_haar(const RelationalGroupoid& g, const QuotientData& qd) {
  return build_strongly_split(g, qd, normalized_quotient_haar(qd), uniform_class_measures(qd));
}

RelationalHaarSystem dirac_split_haar(const RelationalGroupoid& g, const QuotientData& qd) {
  std::vector<ClassMeasures> tau(g.size());
  for (Index x : g.constraint_elements()) {
    tau[x] = uniform_class_measures(qd);
    tau[x][qd.class_of[x]] = PointMeasure::dirac(x);
  }
  return build_split(g, qd, normalized_quotient_haar(qd), tau);
}

RelationalHaarSystem shifted_unit_haar(const RelationalGroupoid& g, const QuotientData& qd) {
  std::vector<ClassMeasures> tau(g.size());
  for (Index x : g.constraint_elements()) {
    tau[x] = uniform_class_measures(qd);
    if (!g.in_l1(x)) continue;
    for (Index a = 0; a < qd.classes.size(); ++a) {
      if (g.in_l1(qd.representative(a))) tau[x][a] = PointMeasure::dirac(qd.classes[a].back());
    }
  }
  return build_split(g, qd, normalized_quotient_haar(qd), tau);
}

RelationalHaarSystem non_split_haar(const RelationalGroupoid& g, const QuotientData& qd) {
  return build_from_conditionals(g, qd, normalized_quotient_haar(qd), [&](Index x, const Pair& classes) {
    std::vector<Pair> pre;
    for (const Pair& p : g.fiber(x)) {
      if (qd.project(p) == classes) pre.push_back(p);
    }
    const Pair corner{qd.classes[classes.first].back(), qd.classes[classes.second].back()};
    if (pre.size() > 1) pre.erase(std::remove(pre.begin(), pre.end(), corner), pre.end());
    return PairMeasure::uniform(pre, Rational(1, static_cast<unsigned long>(pre.size())));
  });
}

RelationalHaarSystem embedded_haar(const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& h) {
  ClassMeasures tau;
  for (Index a = 0; a < qd.classes.size(); ++a) tau[a] = uniform_on(qd.classes[a]);
  return build_strongly_split(g, qd, h, tau);
}

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  const Expected all_good{true, true, true, true, true, true};

  {
    const RelationalGroupoid z4 = cyclic_relational(4, 2);
    const QuotientData qd = quotient_groupoid(z4);
    const std::vector<std::pair<std::string, AlgebraElement>> fns = {
        {"d0", AlgebraElement::delta(4, 0)},
        {"d1", AlgebraElement::delta(4, 1)},
        {"d0d2", indicator(4, {0, 2})},
        {"d1d3", indicator(4, {1, 3})},
        {"zero", AlgebraElement(4)},
    };
    out.push_back({"z4z2-strong", z4, uniform_split_haar(z4, qd), all_good, fns});
    out.push_back({"z4z2-dirac", z4, dirac_split_haar(z4, qd), {true, true, false, true, false, false}, fns});
    out.push_back({"z4z2-shifted", z4, shifted_unit_haar(z4, qd), {true, true, true, true, false, false}, fns});
    out.push_back({"z4z2-nonsplit", z4, non_split_haar(z4, qd), {true, true, true, false, false, false}, fns});
    const RelationalGroupoid iso = with_isolated_element(z4);
    const QuotientData qi = quotient_groupoid(iso);
    out.push_back({"z4z2-isolated", iso, uniform_split_haar(iso, qi), all_good,
                   {{"d0", AlgebraElement::delta(5, 0)}, {"iso", AlgebraElement::delta(5, 4)}}});
  }
  {
    const RelationalGroupoid z6 = cyclic_relational(6, 2);
    const QuotientData qd = quotient_groupoid(z6);
    out.push_back({"z6-2", z6, uniform_split_haar(z6, qd), all_good, {{"d0", AlgebraElement::delta(6, 0)}}});
  }
  {
    const GroupoidTable s3 = symmetric_group(3);
    const RelationalGroupoid g = from_group_and_normal_subgroup(s3, alternating_subgroup(s3));
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"s3-a3", g, uniform_split_haar(g, qd), all_good, {{"e", AlgebraElement::delta(6, 0)}}});
  }
  {
    const RelationalGroupoid g = dihedral_relational(4, 2);
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"d4-r2", g, uniform_split_haar(g, qd), all_good, {{"e", AlgebraElement::delta(8, 0)}}});
  }
  {
    const GroupoidTable pair = GroupoidTable::pair(FiniteSet({"a", "b", "c"}));
    const RelationalGroupoid g = from_groupoid(pair);
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"pair3", g, embedded_haar(g, qd, counting_haar(pair)), all_good,
                   {{"unit", AlgebraElement::delta(9, 0)}}});
  }
  {
    const GroupoidTable z2 = cyclic_group(2);
    const RelationalGroupoid g = from_groupoid(z2);
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"z2-half", g, embedded_haar(g, qd, normalized_counting_haar(z2)), all_good,
                   {{"d0", AlgebraElement::delta(2, 0)}, {"d1", AlgebraElement::delta(2, 1)}}});
  }
  for (const auto& [name, total] : {std::pair{"relpair-identity3", false}, std::pair{"relpair-total2", true}}) {
    const FiniteSet x = total ? FiniteSet({"a", "b"}) : FiniteSet({"a", "b", "c"});
    std::vector<Relation::Tuple> r;
    for (Index i = 0; i < x.size(); ++i) {
      for (Index j = 0; j < x.size(); ++j) {
        if (total || i == j) r.push_back({i, j});
      }
    }
    const RelationalGroupoid g = relational_pair_groupoid(x, Relation({x}, {x}, r));
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({name, g, uniform_split_haar(g, qd), all_good, {{"d0", AlgebraElement::delta(g.size(), 0)}}});
  }
  {
    const ActionGroupoid swap = action_groupoid(cyclic_group(2), FiniteSet({"p", "q"}), {{0, 1}, {1, 0}});
    const RelationalGroupoid g = from_groupoid(swap.groupoid);
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"action-z2-swap", g, embedded_haar(g, qd, swap.haar), all_good,
                   {{"d0", AlgebraElement::delta(4, 0)}}});
  }
  {
    Table act(3, std::vector<Index>(3));
    for (Index a = 0; a < 3; ++a) {
      for (Index x = 0; x < 3; ++x) act[a][x] = (a + x) % 3;
    }
    const ActionGroupoid tr = action_groupoid(cyclic_group(3), FiniteSet({"x0", "x1", "x2"}), act);
    const RelationalGroupoid g = from_groupoid(tr.groupoid);
    const QuotientData qd = quotient_groupoid(g);
    out.push_back({"action-z3-translation", g, embedded_haar(g, qd, tr.haar), all_good,
                   {{"d0", AlgebraElement::delta(9, 0)}}});
  }
  return out;
}

}  // namespace relconv
