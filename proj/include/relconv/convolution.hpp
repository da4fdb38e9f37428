#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "relconv/haar.hpp"
#include "relconv/rational.hpp"
#include "relconv/reduction.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

/// A function from a finite carrier to the complex rationals. Every such
/// function is admissible on a finite discrete carrier.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::size_t size) : values_(size) {}
  explicit AlgebraElement(std::vector<Complex> values) : values_(std::move(values)) {}

  static AlgebraElement zero(std::size_t size) { return AlgebraElement(size); }
  static AlgebraElement delta(std::size_t size, Index at, const Complex& value = Complex(1));

  std::size_t size() const { return values_.size(); }
  const Complex& operator[](Index i) const { return values_.at(i); }
  Complex& operator[](Index i) { return values_.at(i); }
  const std::vector<Complex>& values() const { return values_; }
  bool is_zero() const;
  /// Indices with a nonzero value, ascending.
  std::vector<Index> support() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Complex& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Complex& s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.values_ == b.values_; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

 private:
  std::vector<Complex> values_;
};

/// "0: 1/8, 2: 1/8" with carrier labels; "0" for the zero function.
std::string format(const AlgebraElement& f, const FiniteSet& carrier);

/// (f1 * f2)(k) = sum over (h, l) in fiber(k) of f1(h) f2(l) mu_k(h, l).
AlgebraElement convolve(const RelationalGroupoid& g, const RelationalHaarSystem& mu, const AlgebraElement& f1,
                        const AlgebraElement& f2);

/// (f1 * f2)(c) = sum over eta in G_{s(c)} of f1(c o eta^-1) f2(eta) mu_{s(c)}(eta).
AlgebraElement convolve_groupoid(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f1,
                                 const AlgebraElement& f2);

/// f*(c) = conj(f(c^-1)).
AlgebraElement involution(const GroupoidTable& g, const AlgebraElement& f);
/// f*(x) = conj(f(I(x))).
AlgebraElement involution(const RelationalGroupoid& g, const AlgebraElement& f);

struct AssociativityCheck {
  bool holds = true;
  std::optional<std::array<Index, 3>> witness;
  /// (d_a * d_b) * d_c and d_a * (d_b * d_c) at the witness.
  AlgebraElement left;
  AlgebraElement right;
};

/// Scans every delta-basis triple, which suffices by bilinearity. The
/// witness is the first failing triple in lexicographic order.
AssociativityCheck check_associativity(const RelationalGroupoid& g, const RelationalHaarSystem& mu);
AssociativityCheck check_associativity(const GroupoidTable& g, const RightHaarSystem& h);

/// f is constant on every L2-class inside C.
bool is_l2_invariant_fn(const RelationalGroupoid& g, const AlgebraElement& f);

/// q*(f)(x) = f(q(x)) on C, 0 off C.
AlgebraElement pullback(const QuotientData& qd, const AlgebraElement& f);

/// Phi(f)(q(x)) = f(x) for an L2-invariant f. Throws NotInvariant otherwise.
AlgebraElement push_invariant(const RelationalGroupoid& g, const QuotientData& qd, const AlgebraElement& f);

/// q_* extended to all functions through class measures:
/// (q_* f)(a) = sum over x in a of tau_a(x) f(x).
AlgebraElement push_split(const QuotientData& qd, const ClassMeasures& tau, const AlgebraElement& f);

/// Class indicators of C, in class order. A basis of the L2-invariant
/// functions modulo the vanishing ideal.
std::vector<AlgebraElement> invariant_basis(const QuotientData& qd, std::size_t carrier_size);

/// f1 * f2 = q*(Phi(f1) * Phi(f2)) on C and 0 off C, for invariant f1, f2,
/// with the quotient Haar system induced by mu.
Classification check_l2conv_lemma(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu,
                                  const AlgebraElement& f1, const AlgebraElement& f2);

/// The reduced convolution algebra: restriction to C, the invariant basis and
/// Phi into the quotient algebra.
struct ReducedAlgebra {
  std::vector<Index> constraint;
  std::vector<AlgebraElement> basis;
  RightHaarSystem quotient_haar;

  /// Restriction to C, i.e. the class of f modulo the vanishing ideal.
  AlgebraElement restrict(const AlgebraElement& f) const;
};
ReducedAlgebra reduce_algebra(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu);

/// Phi is a linear bijection from the invariant basis onto the delta basis of
/// the quotient, invariant functions are closed under the product, and
/// Phi(f1 * f2) = Phi(f1) * Phi(f2) on every basis pair.
Classification check_reduction_theorem(const RelationalGroupoid& g, const QuotientData& qd,
                                       const RelationalHaarSystem& mu);

/// The product restricted to invariant functions is associative (basis scan).
Classification check_invariant_associativity(const RelationalGroupoid& g, const QuotientData& qd,
                                             const RelationalHaarSystem& mu);

/// For x outside C and every y: (d_x * d_y) and (d_y * d_x) vanish on C.
Classification verify_ideal(const RelationalGroupoid& g, const RelationalHaarSystem& mu);

/// For a strongly split mu with class measures tau: q_* q* = id on the
/// quotient basis, and d_a * d_b = q*(q_* d_a * q_* d_b) for every pair.
Classification check_split_factorization(const RelationalGroupoid& g, const QuotientData& qd,
                                         const RelationalHaarSystem& mu, const ClassMeasures& tau);

}  // namespace relconv
