#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relconv/convolution.hpp"
#include "relconv/groupoid_table.hpp"
#include "relconv/haar.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

// Group tables. Labels: cyclic "0".."n-1"; dihedral "r<i>" for rotations and
// "s<i>" for r^i s; symmetric groups in one-line notation ("012" is the
// identity). Identity is always index 0.
GroupoidTable cyclic_group(std::size_t n);
GroupoidTable dihedral_group(std::size_t n);
GroupoidTable symmetric_group(std::size_t degree);

/// Even permutations of symmetric_group(degree), as indices.
std::vector<Index> alternating_subgroup(const GroupoidTable& symmetric);
/// The Klein four-group inside symmetric_group(4).
std::vector<Index> klein_subgroup(const GroupoidTable& s4);
/// Rotations r^(d k) inside dihedral_group(n); normal for every d | n.
std::vector<Index> dihedral_rotation_subgroup(std::size_t n, std::size_t d);

/// Z_n with the normal subgroup generated by m. Throws Error unless m | n.
RelationalGroupoid cyclic_relational(std::size_t n, std::size_t m);
/// D_n with the rotation subgroup generated by r^d. Throws Error unless d | n.
RelationalGroupoid dihedral_relational(std::size_t n, std::size_t d);

struct NamedRelationalGroup {
  std::string name;
  RelationalGroupoid group;
};
/// A cyclic or dihedral relational group of order <= 24, chosen from `seed`.
NamedRelationalGroup random_relational_group(std::uint64_t seed);

struct ActionGroupoid {
  GroupoidTable groupoid;
  /// delta at each point times normalized counting measure on the group.
  RightHaarSystem haar;
};
/// Transformation groupoid of a left action act[g][x] = g.x on points. The
/// morphism "(g,x)" goes from x to g.x. Throws Error if the action laws fail.
ActionGroupoid action_groupoid(const GroupoidTable& group, const FiniteSet& points,
                               const std::vector<std::vector<Index>>& act);

enum class Mutation { drop_tuple, add_tuple, swap_involution };

/// Removes one L3 triple and rebuilds from (I, L3). Unchecked.
RelationalGroupoid drop_l3_tuple(const RelationalGroupoid& g, const Relation::Tuple& t);
/// Adds one L3 triple and rebuilds from (I, L3). Unchecked.
RelationalGroupoid add_l3_tuple(const RelationalGroupoid& g, const Relation::Tuple& t);
/// Exchanges the values of I at a and b and rebuilds from (I, L3). Unchecked.
RelationalGroupoid swap_involution(const RelationalGroupoid& g, Index a, Index b);
/// One deterministic mutation of the given kind chosen by `seed`.
RelationalGroupoid mutate(const RelationalGroupoid& g, Mutation op, std::uint64_t seed);

/// Adds a point that appears in no relation and is fixed by I.
RelationalGroupoid with_isolated_element(const RelationalGroupoid& g, const std::string& label = "iso");

// Haar systems. Each takes the quotient of `g` and the quotient Haar system
// nu = normalized counting measure on source fibers.

/// Strongly split with tau = uniform on each class.
RelationalHaarSystem uniform_split_haar(const RelationalGroupoid& g, const QuotientData& qd);
/// Split, generally not L2-invariant: tau^g is the Dirac measure at g on the
/// class of g and uniform elsewhere.
RelationalHaarSystem dirac_split_haar(const RelationalGroupoid& g, const QuotientData& qd);
/// Split and L2-invariant but not strongly split: elements of L1 use the
/// Dirac measure at the largest element of each unit class, all other
/// choices are uniform.
RelationalHaarSystem shifted_unit_haar(const RelationalGroupoid& g, const QuotientData& qd);
/// L2-invariant, not split when classes have two or more elements: each
/// conditional is uniform on its preimage minus the pair of largest
/// elements.
RelationalHaarSystem non_split_haar(const RelationalGroupoid& g, const QuotientData& qd);
/// mu_k(a, b) = h_{s(b)}(b) on an embedded honest groupoid.
RelationalHaarSystem embedded_haar(const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& h);

struct Expected {
  bool axioms = true;
  std::optional<bool> haar;
  std::optional<bool> l2_invariant;
  std::optional<bool> split;
  std::optional<bool> strongly_split;
  std::optional<bool> associative;
};

struct CorpusEntry {
  std::string name;
  RelationalGroupoid group;
  std::optional<RelationalHaarSystem> haar;
  Expected expected;
  /// Named test functions, all with the carrier size of `group`.
  std::vector<std::pair<std::string, AlgebraElement>> functions;
};

/// The positive corpus: every entry satisfies the axioms.
std::vector<CorpusEntry> standard_corpus();

}  // namespace relconv
