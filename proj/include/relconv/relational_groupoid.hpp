#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relconv/groupoid_table.hpp"
#include "relconv/relation.hpp"

namespace relconv {

inline constexpr std::size_t kDefaultCarrierLimit = 64;

using Pair = std::pair<Index, Index>;

/// The relations derived from (L, I).
struct DerivedRelations {
  Relation l1;  // * -/-> G, the "units"
  Relation l2;  // G -/-> G, unit equivalence
  Relation l3;  // G x G -/-> G, multiplication graph
  Relation constraint;  // * -/-> G, image of l2
};

/// L3 = I o L, L1 = L3 o graph(I) (graph(I) as a subset of G x G),
/// L2 = L3 o (L1 x id), C = L2 o G.
DerivedRelations derive_relations(const FiniteSet& carrier, const Relation& l, std::span<const Index> involution);

/// A carrier G with a ternary relation L (typed G x G -/-> G) and an
/// involution I. Values may be built unchecked; `validated()` records whether
/// check_axioms has passed on this value.
class RelationalGroupoid {
 public:
  RelationalGroupoid(FiniteSet carrier, Relation l, std::vector<Index> involution,
                     std::size_t carrier_limit = kDefaultCarrierLimit);

  /// Builds from the (I, L3) presentation, recovering L = I o L3.
  static RelationalGroupoid from_l3(FiniteSet carrier, const Relation& l3, std::vector<Index> involution,
                                    std::size_t carrier_limit = kDefaultCarrierLimit);

  /// Runs check_axioms and throws AxiomViolation on failure.
  static RelationalGroupoid checked(FiniteSet carrier, Relation l, std::vector<Index> involution,
                                    std::size_t carrier_limit = kDefaultCarrierLimit);
  static RelationalGroupoid checked(RelationalGroupoid g);

  const FiniteSet& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  const Relation& l() const { return l_; }
  const Relation& l1() const { return derived_.l1; }
  const Relation& l2() const { return derived_.l2; }
  const Relation& l3() const { return derived_.l3; }
  const Relation& constraint_relation() const { return derived_.constraint; }
  const Relation& involution_relation() const { return i_graph_; }
  std::span<const Index> involution() const { return involution_; }
  Index inverse(Index g) const { return involution_.at(g); }

  bool in_l1(Index g) const { return in_l1_.at(g) != 0; }
  bool in_constraint(Index g) const { return in_c_.at(g) != 0; }
  std::vector<Index> constraint_elements() const;
  bool l2_related(Index a, Index b) const { return l2_.at(index2(a, b)) != 0; }
  bool has_triple(Index a, Index b, Index c) const {
    return l3_bits_.at((static_cast<std::size_t>(a) * size() + b) * size() + c) != 0;
  }

  /// Pairs (h, k) with (h, k, g) in L3, sorted.
  const std::vector<Pair>& fiber(Index g) const { return fibers_.at(g); }
  /// {x | (a, b, x) in L3}, sorted.
  const std::vector<Index>& set_product(Index a, Index b) const { return products_.at(index2(a, b)); }

  bool validated() const { return validated_; }

 private:
  std::size_t index2(Index a, Index b) const { return static_cast<std::size_t>(a) * size() + b; }
  void build_tables();

  FiniteSet carrier_;
  Relation l_;
  std::vector<Index> involution_;
  Relation i_graph_;
  DerivedRelations derived_;
  std::vector<char> l3_bits_;
  std::vector<char> l2_;
  std::vector<char> in_l1_;
  std::vector<char> in_c_;
  std::vector<std::vector<Pair>> fibers_;
  std::vector<std::vector<Index>> products_;
  bool validated_ = false;
};

struct AxiomEntry {
  std::string id;           // e.g. "A.4", "A.6-ii.3"
  std::string description;  // the equation checked
  bool passed = true;
  /// Lexicographically smallest tuple on which the two sides disagree,
  /// formatted with labels.
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  bool all_passed() const;
  const AxiomEntry* first_failure() const;
};

/// One entry per sub-axiom: A.1, A.2, A.3, A.4, A.5, A.6-i, A.6-ii.1,
/// A.6-ii.2, A.6-ii.3a, A.6-ii.3b, A.6-iii.a, A.6-iii.b.
AxiomReport check_axioms(const RelationalGroupoid& g);

/// Relational group from a one-object groupoid and a normal subgroup:
/// L3 = {(a, b, abh) | h in H}, I = inversion.
/// Throws Error if `subgroup` is not a subgroup, or is not normal (the
/// message names a conjugation witness).
RelationalGroupoid from_group_and_normal_subgroup(const GroupoidTable& group, std::span<const Index> subgroup);

/// Embeds an honest groupoid: L = {(a, b, (ab)^-1)}, I = inverse.
RelationalGroupoid from_groupoid(const GroupoidTable& groupoid);

/// Relational pair groupoid on x x x for an equivalence relation r on x:
/// ((a,b), (b',c), (a',c')) is in L3 iff b ~ b', a ~ a', c ~ c'. Throws if r
/// is not an equivalence relation on x.
RelationalGroupoid relational_pair_groupoid(const FiniteSet& x, const Relation& r);

enum class Side { left, right };

/// Right: R_S = {(z1, z2) | exists s in S: (z1, s, z2) in L3}.
/// Left:  L_S = {(z1, z2) | exists s in S: (s, z1, z2) in L3}.
Relation action_relation(const RelationalGroupoid& g, std::span<const Index> subset, Side side);

/// Composable-pair fiber of g as a subset of G x G.
Relation fiber_relation(const RelationalGroupoid& g, Index k);

}  // namespace relconv
