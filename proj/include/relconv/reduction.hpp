#pragma once

#include <vector>

#include "relconv/groupoid_table.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

/// C = L2 o G, the image of L2. Throws AxiomViolation if L2 is not an
/// equivalence relation on C.
std::vector<Index> constraint_set(const RelationalGroupoid& g);

/// {(c, l) in C x L1 | exists x: (l, c, x) in L3}: units that compose with c
/// on the left. Under the a o b convention these are the units at target(c).
Relation left_unit_relation(const RelationalGroupoid& g);
/// {(c, l) in C x L1 | exists x: (c, l, x) in L3}: units at source(c).
Relation right_unit_relation(const RelationalGroupoid& g);

/// The L2-reduction C/L2 of a relational groupoid.
struct QuotientData {
  /// L2-classes of C ordered by their smallest element, each sorted.
  std::vector<std::vector<Index>> classes;
  /// Class of each carrier element; kUndefined outside C.
  std::vector<Index> class_of;
  /// q : G -/-> quotient morphisms; a surjective function on C.
  Relation q;
  /// Morphisms are the classes (labelled by their smallest element); objects
  /// are the classes inside L1.
  GroupoidTable quotient;

  Index representative(Index cls) const { return classes.at(cls).front(); }
  /// Pair (h, k) mapped class-wise; both must lie in C.
  Pair project(const Pair& p) const { return {class_of.at(p.first), class_of.at(p.second)}; }
};

/// Builds the quotient groupoid. Multiplication is [h][k] = [x] for
/// (h, k, x) in L3; source/target come from the right/left unit relations;
/// inverse is induced by I. All groupoid laws are verified on the result.
/// Throws QuotientError with a witness if the input does not reduce.
QuotientData quotient_groupoid(const RelationalGroupoid& g);

/// Checks that graph(q), as a subset of G x from_groupoid(quotient) with the
/// restricted product structure, is a relational subgroupoid. Uses
/// `qd.class_of` as the assignment.
bool verify_q_morphism(const RelationalGroupoid& g, const QuotientData& qd);

}  // namespace relconv
