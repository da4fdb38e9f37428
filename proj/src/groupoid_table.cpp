#include "relconv/groupoid_table.hpp"

#include "relconv/error.hpp"

namespace relconv {

namespace {

std::string fmt(const FiniteSet& s, Index i) { return i < s.size() ? s.label(i) : std::to_string(i); }

}  // namespace

std::optional<std::string> find_groupoid_violation(const GroupoidData& d) {
  const std::size_t n = d.morphisms.size();
  const std::size_t m = d.objects.size();
  if (d.source.size() != n || d.target.size() != n || d.inverse.size() != n ||
      d.mult.size() != n * n || d.unit.size() != m) {
    return "structure map sizes do not match the morphism/object counts";
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (d.source[a] >= m || d.target[a] >= m || d.inverse[a] >= n) {
      return "structure map out of range at morphism " + fmt(d.morphisms, a);
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (d.unit[x] >= n) return "unit out of range at object " + fmt(d.objects, x);
  }
  const auto& M = d.morphisms;
  auto mul = [&](Index a, Index b) { return d.mult[static_cast<std::size_t>(a) * n + b]; };

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const bool composable = d.target[b] == d.source[a];
      const Index ab = mul(a, b);
      if (composable != (ab != kUndefined)) {
        return "composition domain wrong at (" + fmt(M, a) + "," + fmt(M, b) + ")";
      }
      if (ab == kUndefined) continue;
      if (ab >= n) return "product out of range at (" + fmt(M, a) + "," + fmt(M, b) + ")";
      if (d.source[ab] != d.source[b] || d.target[ab] != d.target[a]) {
        return "source/target of product wrong at (" + fmt(M, a) + "," + fmt(M, b) + ")";
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index ab = mul(a, b);
      if (ab == kUndefined) continue;
      for (Index c = 0; c < n; ++c) {
        const Index bc = mul(b, c);
        if (bc == kUndefined) continue;
        if (mul(ab, c) != mul(a, bc)) {
          return "associativity fails at (" + fmt(M, a) + "," + fmt(M, b) + "," + fmt(M, c) + ")";
        }
      }
    }
  }
  for (Index x = 0; x < m; ++x) {
    const Index e = d.unit[x];
    if (d.source[e] != x || d.target[e] != x) return "unit at " + fmt(d.objects, x) + " is not a loop";
  }
  for (Index a = 0; a < n; ++a) {
    if (mul(d.unit[d.target[a]], a) != a || mul(a, d.unit[d.source[a]]) != a) {
      return "unit law fails at " + fmt(M, a);
    }
    const Index inv = d.inverse[a];
    if (mul(a, inv) != d.unit[d.target[a]] || mul(inv, a) != d.unit[d.source[a]]) {
      return "inverse law fails at " + fmt(M, a);
    }
  }
  return std::nullopt;
}

GroupoidTable::GroupoidTable(GroupoidData data) : d_(std::move(data)) {
  if (auto v = find_groupoid_violation(d_)) throw InvalidGroupoid("invalid groupoid: " + *v);
}

GroupoidTable GroupoidTable::group(FiniteSet elements, const std::vector<std::vector<Index>>& table) {
  const std::size_t n = elements.size();
  if (n == 0) throw InvalidGroupoid("a group needs at least one element");
  if (table.size() != n) throw InvalidGroupoid("multiplication table has wrong row count");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidGroupoid("multiplication table has wrong column count");
    for (Index v : row) {
      if (v >= n) throw InvalidGroupoid("multiplication table entry out of range");
    }
  }
  std::optional<Index> identity;
  for (Index e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (!identity) throw InvalidGroupoid("multiplication table has no identity element");

  GroupoidData d;
  d.morphisms = elements;
  d.objects = FiniteSet({"*"});
  d.source.assign(n, 0);
  d.target.assign(n, 0);
  d.unit = {*identity};
  d.mult.resize(n * n);
  d.inverse.assign(n, kUndefined);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      d.mult[static_cast<std::size_t>(a) * n + b] = table[a][b];
      if (table[a][b] == *identity && table[b][a] == *identity) d.inverse[a] = b;
    }
    if (d.inverse[a] == kUndefined) {
      throw InvalidGroupoid("element " + elements.label(a) + " has no inverse");
    }
  }
  return GroupoidTable(std::move(d));
}

GroupoidTable GroupoidTable::pair(const FiniteSet& points) {
  const Index p = static_cast<Index>(points.size());
  std::vector<std::string> labels;
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) labels.push_back("(" + points.label(a) + "," + points.label(b) + ")");
  }
  GroupoidData d;
  d.morphisms = FiniteSet(std::move(labels));
  d.objects = points;
  const std::size_t n = static_cast<std::size_t>(p) * p;
  auto id = [p](Index a, Index b) { return a * p + b; };
  d.source.resize(n);
  d.target.resize(n);
  d.inverse.resize(n);
  d.mult.assign(n * n, kUndefined);
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) {
      d.target[id(a, b)] = a;
      d.source[id(a, b)] = b;
      d.inverse[id(a, b)] = id(b, a);
      for (Index c = 0; c < p; ++c) d.mult[id(a, b) * n + id(b, c)] = id(a, c);
    }
  }
  for (Index a = 0; a < p; ++a) d.unit.push_back(id(a, a));
  return GroupoidTable(std::move(d));
}

std::vector<Index> GroupoidTable::source_fiber(Index x) const {
  std::vector<Index> out;
  for (Index a = 0; a < size(); ++a) {
    if (d_.source[a] == x) out.push_back(a);
  }
  return out;
}

}  // namespace relconv
