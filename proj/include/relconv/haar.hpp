#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relconv/groupoid_table.hpp"
#include "relconv/measure.hpp"
#include "relconv/reduction.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

/// Measures mu_x on the source fibers G_x of a finite groupoid, indexed by
/// object. Smoothness conditions are vacuous on finite discrete carriers.
struct RightHaarSystem {
  std::vector<PointMeasure> per_object;
};

/// mu_x = counting measure on G_x.
RightHaarSystem counting_haar(const GroupoidTable& g);
/// mu_x = counting measure on G_x scaled to total mass 1.
RightHaarSystem normalized_counting_haar(const GroupoidTable& g);

struct HaarCheck {
  bool holds = true;
  /// Morphism gamma where right invariance fails, or kUndefined.
  Index witness = kUndefined;
  std::string detail;
};

/// Right invariance: for every gamma: x -> y, (R_gamma)_* mu_y = mu_x where
/// R_gamma(eta) = eta o gamma. Also checks each mu_x lives on G_x.
HaarCheck check_right_haar(const GroupoidTable& g, const RightHaarSystem& h);

/// Measures mu_g on the composable-pair fibers of a relational groupoid,
/// indexed by carrier element.
struct RelationalHaarSystem {
  std::vector<PairMeasure> per_element;
};

struct Disintegration {
  PairMeasure base;
  /// Probability measures on the preimages, only for base pairs with
  /// positive weight.
  std::map<Pair, PairMeasure> conditionals;
};

Disintegration disintegrate(const PairMeasure& m, const std::function<Pair(const Pair&)>& projection);
PairMeasure reassemble(const Disintegration& d);

/// (q_g)_* m for a measure on a fiber of g.
PairMeasure quotient_pushforward(const QuotientData& qd, const PairMeasure& m);
Disintegration disintegrate(const QuotientData& qd, const PairMeasure& m);

/// nu on the quotient fiber of `target`: nu(a, b) = h_{source(target)}(b)
/// for every pair a o b = target.
PairMeasure pair_measure_from_haar(const GroupoidTable& q, const RightHaarSystem& h, Index target);

struct CheckEntry {
  std::string id;
  std::string description;
  bool passed = true;
  std::string witness;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool all_passed() const;
  const CheckEntry* find(const std::string& id) const;
};

/// Entries "support", "(i)", "(ii)", "(iii)".
CheckReport check_relational_haar(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu);

/// The right Haar system on the quotient induced by mu: nu_x is the
/// second-factor projection of (q_g)_* mu_g for g the representative of the
/// unit at x.
RightHaarSystem induced_quotient_haar(const QuotientData& qd, const RelationalHaarSystem& mu);

struct Classification {
  bool holds = true;
  std::string witness;
};

/// mu_g == mu_h whenever (g, h) in L2.
Classification is_l2_invariant(const RelationalGroupoid& g, const RelationalHaarSystem& mu);

/// Probability measures indexed by quotient class.
using ClassMeasures = std::map<Index, PointMeasure>;

struct SplitResult {
  bool holds = true;
  std::string witness;
  /// tau^g for each carrier element (empty outside C). Only classes that
  /// occur in a positive-weight fiber of g are constrained and listed.
  std::vector<ClassMeasures> tau;
};
SplitResult is_split(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu);

struct StrongSplitResult {
  bool holds = true;
  std::string witness;
  ClassMeasures tau;
};
StrongSplitResult is_strongly_split(const RelationalGroupoid& g, const QuotientData& qd,
                                    const RelationalHaarSystem& mu);

/// mu_g(h, k) = nu_{q(g)}(q(h), q(k)) * P_g(q(h), q(k))(h, k) for g in C,
/// with P_g supplied per element and quotient pair. Throws MeasureError if a
/// conditional is not a probability measure on its preimage.
RelationalHaarSystem build_from_conditionals(
    const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& nu,
    const std::function<PairMeasure(Index element, const Pair& classes)>& conditional);

/// Conditionals tau^g_a x tau^g_b.
RelationalHaarSystem build_split(const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& nu,
                                 const std::vector<ClassMeasures>& tau_per_element);

/// Conditionals tau_a x tau_b, the same for every element.
RelationalHaarSystem build_strongly_split(const RelationalGroupoid& g, const QuotientData& qd,
                                          const RightHaarSystem& nu, const ClassMeasures& tau);

/// tau_a = uniform probability on each class.
ClassMeasures uniform_class_measures(const QuotientData& qd);

}  // namespace relconv
