#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace relconv {

using Index = std::uint32_t;

/// Finite set of distinct string labels with a fixed iteration order.
/// Copies share the label table.
class FiniteSet {
 public:
  FiniteSet();
  explicit FiniteSet(std::vector<std::string> labels);

  /// {"0", "1", ..., "n-1"}
  static FiniteSet range(std::size_t n);

  std::size_t size() const { return data_->labels.size(); }
  bool empty() const { return size() == 0; }
  const std::string& label(Index i) const { return data_->labels.at(i); }
  const std::vector<std::string>& labels() const { return data_->labels; }
  std::optional<Index> find(std::string_view label) const;
  /// Throws LabelError for unknown labels.
  Index index_of(std::string_view label) const;

  friend bool operator==(const FiniteSet& a, const FiniteSet& b);

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index;
  };
  std::shared_ptr<const Data> data_;
};

/// A relation A_1 x ... x A_k -/-> B_1 x ... x B_m, stored as a sorted set of
/// (k+m)-tuples. An empty domain list is the one-point set, so a relation with
/// no domain factors is a subset of the codomain product.
///
/// Tuples are packed into mixed-radix 64-bit keys (domain factors first, most
/// significant first), so key order is lexicographic tuple order.
class Relation {
 public:
  using Tuple = std::vector<Index>;
  using Key = std::uint64_t;

  Relation() = default;
  Relation(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain);
  Relation(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain,
           const std::vector<Tuple>& tuples);

  static Relation identity(const FiniteSet& set);
  static Relation identity(const std::vector<FiniteSet>& factors);
  /// A subset of `set`, typed as a relation from the one-point set.
  static Relation subset(const FiniteSet& set, std::span<const Index> elements);
  static Relation full_subset(const FiniteSet& set);
  /// Graph of a total function `map` from `from` to `to`.
  static Relation graph(const FiniteSet& from, const FiniteSet& to, std::span<const Index> map);
  /// (a, b) -> (b, a) as a relation A x B -/-> B x A.
  static Relation transposition(const FiniteSet& a, const FiniteSet& b);

  const std::vector<FiniteSet>& domain() const { return domain_; }
  const std::vector<FiniteSet>& codomain() const { return codomain_; }
  std::size_t arity() const { return domain_.size() + codomain_.size(); }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<Key>& keys() const { return keys_; }

  Tuple tuple(std::size_t i) const { return decode(keys_.at(i)); }
  std::vector<Tuple> tuples() const;
  bool contains(std::span<const Index> tuple) const;
  bool contains(std::initializer_list<Index> tuple) const {
    return contains(std::span<const Index>(tuple.begin(), tuple.size()));
  }

  Key encode(std::span<const Index> tuple) const;
  Tuple decode(Key key) const;

  /// Product of the domain factor sizes (1 for the one-point set).
  Key domain_extent() const { return domain_extent_; }
  Key codomain_extent() const { return codomain_extent_; }

  /// Formats a tuple with the factor labels, e.g. "(0,2,1)".
  std::string format(std::span<const Index> tuple) const;

  friend bool operator==(const Relation& a, const Relation& b);

  /// Builds directly from keys; `keys` need not be sorted or unique.
  static Relation from_keys(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain,
                            std::vector<Key> keys);

 private:
  void init_extents();

  std::vector<FiniteSet> domain_;
  std::vector<FiniteSet> codomain_;
  std::vector<std::size_t> radices_;
  Key domain_extent_ = 1;
  Key codomain_extent_ = 1;
  std::vector<Key> keys_;
};

/// r then s: {(a, c) | exists b: (a, b) in r and (b, c) in s}. Throws
/// ArityMismatch naming the first codomain/domain factor that disagrees.
Relation compose(const Relation& r, const Relation& s);

/// Relational converse.
Relation dagger(const Relation& r);

/// r x s : A x A' -/-> B x B'.
Relation product(const Relation& r, const Relation& s);

Relation set_union(const Relation& r, const Relation& s);
Relation set_intersection(const Relation& r, const Relation& s);

/// Lexicographically smallest tuple in the symmetric difference, or nullopt
/// if the relations are equal as sets.
std::optional<Relation::Tuple> first_difference(const Relation& a, const Relation& b);

struct EquivalenceCheck {
  bool holds = true;
  std::string failed_property;  // "reflexive", "symmetric" or "transitive"
  /// Missing pair that would be required by the failed property.
  Relation::Tuple witness;
};

/// Tests whether the endorelation `r` restricted to `carrier` is reflexive,
/// symmetric and transitive.
EquivalenceCheck is_equivalence(const Relation& r, std::span<const Index> carrier);

}  // namespace relconv
