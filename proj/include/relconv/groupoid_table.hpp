#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relconv/relation.hpp"

namespace relconv {

inline constexpr Index kUndefined = static_cast<Index>(-1);

/// Raw structure maps of a finite groupoid. Composition follows the
/// right-to-left convention: mult(a, b) = a o b is defined iff
/// target(b) == source(a), and then source(a o b) = source(b),
/// target(a o b) = target(a).
struct GroupoidData {
  FiniteSet morphisms;
  FiniteSet objects;
  std::vector<Index> source;
  std::vector<Index> target;
  /// Row-major |morphisms|^2 table, kUndefined where not composable.
  std::vector<Index> mult;
  std::vector<Index> inverse;
  /// unit[x] is the identity morphism at object x.
  std::vector<Index> unit;
};

/// First violated groupoid law, as a human-readable message.
std::optional<std::string> find_groupoid_violation(const GroupoidData& data);

/// A finite groupoid whose laws have been verified at construction.
class GroupoidTable {
 public:
  /// Throws InvalidGroupoid naming the first violated law.
  explicit GroupoidTable(GroupoidData data);

  /// One-object groupoid from a group multiplication table
  /// (table[a][b] = a*b). Identity and inverses are read off the table.
  static GroupoidTable group(FiniteSet elements, const std::vector<std::vector<Index>>& table);
  /// Pair groupoid on `points`: morphism "(a,b)" is the arrow b -> a, so
  /// (a,b) o (b,c) = (a,c).
  static GroupoidTable pair(const FiniteSet& points);

  const FiniteSet& morphisms() const { return d_.morphisms; }
  const FiniteSet& objects() const { return d_.objects; }
  std::size_t size() const { return d_.morphisms.size(); }
  Index source(Index a) const { return d_.source.at(a); }
  Index target(Index a) const { return d_.target.at(a); }
  Index inverse(Index a) const { return d_.inverse.at(a); }
  Index unit(Index x) const { return d_.unit.at(x); }
  std::optional<Index> compose(Index a, Index b) const {
    Index m = d_.mult.at(static_cast<std::size_t>(a) * size() + b);
    if (m == kUndefined) return std::nullopt;
    return m;
  }
  /// Morphisms with source x, in index order.
  std::vector<Index> source_fiber(Index x) const;
  const GroupoidData& data() const { return d_; }

 private:
  GroupoidData d_;
};

}  // namespace relconv
