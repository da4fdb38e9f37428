#pragma once

#include "relconv/haar.hpp"
#include "relconv/reduction.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

// Structural facts about composable-pair fibers and the self-action. Each
// returns the first counterexample found, formatted with carrier labels.

/// For distinct g, g' with at least one in C: the fibers are equal iff
/// (g, g') in L2, and disjoint otherwise.
Classification check_fiber_partition(const RelationalGroupoid& g);

/// For (g, h) composable: (id x R_h) o G2_g = G2_{gh}, with G2_g applied
/// first.
Classification check_right_translation(const RelationalGroupoid& g);

/// For (g, h) composable: (L_g x id) o G2_h = G2_{gh}.
Classification check_left_translation(const RelationalGroupoid& g);

/// For (g, h) composable: (L_{I(g)} x R_h) o G2_g = G2_h.
Classification check_two_sided_translation(const RelationalGroupoid& g);

/// R_g then R_h equals R_{gh} for every pair (g, h).
Classification check_action_composition(const RelationalGroupoid& g);

/// rho = L3 satisfies rho o (rho x id) = rho o (id x L3), and R_{L1} = L2.
Classification check_self_action(const RelationalGroupoid& g);

/// The right unit relation equals I o (left unit relation) o I.
Classification check_unit_relations(const RelationalGroupoid& g);

/// For g in C, q x q maps G2_g onto the quotient fiber of q(g), and every
/// preimage of a quotient pair is a full product of classes.
Classification check_fiber_quotient(const RelationalGroupoid& g, const QuotientData& qd);

/// supp(d_a * d_b) lies in C for every basis pair.
Classification check_support_in_constraint(const RelationalGroupoid& g, const RelationalHaarSystem& mu);

/// mu_g(A) = mu_k((id x R_h) o A) for (g, h, k) in L3 and A a full preimage
/// of one quotient pair (the L2-saturated blocks of G2_g).
Classification check_saturation_invariance(const RelationalGroupoid& g, const QuotientData& qd,
                                           const RelationalHaarSystem& mu);

}  // namespace relconv
