#include "relconv/convolution.hpp"

#include <sstream>

namespace relconv {

AlgebraElement AlgebraElement::delta(std::size_t size, Index at, const Complex& value) {
  AlgebraElement f(size);
  f[at] = value;
  return f;
}

bool AlgebraElement::is_zero() const {
  for (const auto& z : values_) {
    if (!z.is_zero()) return false;
  }
  return true;
}

std::vector<Index> AlgebraElement::support() const {
  std::vector<Index> out;
  for (Index i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_zero()) out.push_back(i);
  }
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.size() != size()) throw Error("algebra elements of different sizes");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (o.size() != size()) throw Error("algebra elements of different sizes");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Complex& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

std::string format(const AlgebraElement& f, const FiniteSet& carrier) {
  const auto supp = f.support();
  if (supp.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < supp.size(); ++i) {
    if (i) os << ", ";
    os << carrier.label(supp[i]) << ": " << to_string(f[supp[i]]);
  }
  return os.str();
}

namespace {

void require(std::size_t n, const AlgebraElement& f) {
  if (f.size() != n) {
    throw Error("function has " + std::to_string(f.size()) + " values for a carrier of size " + std::to_string(n));
  }
}

using Sparse = std::vector<std::pair<Index, Rational>>;

/// d_a * d_b as a sparse combination of deltas, for all a, b.
std::vector<Sparse> structure_constants(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  const std::size_t n = g.size();
  std::vector<Sparse> table(n * n);
  for (Index k = 0; k < n; ++k) {
    for (const auto& [p, w] : mu.per_element.at(k).weights()) table[p.first * n + p.second].emplace_back(k, w);
  }
  return table;
}

std::vector<Sparse> structure_constants(const GroupoidTable& g, const RightHaarSystem& h) {
  const std::size_t n = g.size();
  std::vector<Sparse> table(n * n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      auto ab = g.compose(a, b);
      if (!ab) continue;
      Rational w = h.per_object.at(g.source(b)).weight(b);
      if (sgn(w) != 0) table[a * n + b].emplace_back(*ab, w);
    }
  }
  return table;
}

AssociativityCheck scan_associativity(const std::vector<Sparse>& table, std::size_t n) {
  AssociativityCheck out;
  std::vector<Rational> left(n), right(n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        std::fill(left.begin(), left.end(), Rational(0));
        std::fill(right.begin(), right.end(), Rational(0));
        for (const auto& [k, w] : table[a * n + b]) {
          for (const auto& [m, v] : table[k * n + c]) left[m] += w * v;
        }
        for (const auto& [k, w] : table[b * n + c]) {
          for (const auto& [m, v] : table[a * n + k]) right[m] += w * v;
        }
        if (left != right) {
          out.holds = false;
          out.witness = std::array<Index, 3>{a, b, c};
          out.left = AlgebraElement(std::vector<Complex>(left.begin(), left.end()));
          out.right = AlgebraElement(std::vector<Complex>(right.begin(), right.end()));
          return out;
        }
      }
    }
  }
  return out;
}

std::string triple(const FiniteSet& s, Index a, Index b) { return "(" + s.label(a) + "," + s.label(b) + ")"; }

}  // namespace

AlgebraElement convolve(const RelationalGroupoid& g, const RelationalHaarSystem& mu, const AlgebraElement& f1,
                        const AlgebraElement& f2) {
  const std::size_t n = g.size();
  require(n, f1);
  require(n, f2);
  if (mu.per_element.size() != n) throw MeasureError("Haar system does not match the carrier");
  AlgebraElement out(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc;
    for (const auto& [p, w] : mu.per_element[k].weights()) {
      if (f1[p.first].is_zero() || f2[p.second].is_zero()) continue;
      acc += f1[p.first] * f2[p.second] * w;
    }
    out[k] = acc;
  }
  return out;
}

AlgebraElement convolve_groupoid(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f1,
                                 const AlgebraElement& f2) {
  const std::size_t n = g.size();
  require(n, f1);
  require(n, f2);
  if (h.per_object.size() != g.objects().size()) throw MeasureError("Haar system does not match the objects");
  AlgebraElement out(n);
  for (Index c = 0; c < n; ++c) {
    Complex acc;
    for (const auto& [eta, w] : h.per_object[g.source(c)].weights()) {
      auto left = g.compose(c, g.inverse(eta));
      if (!left) continue;
      acc += f1[*left] * f2[eta] * w;
    }
    out[c] = acc;
  }
  return out;
}

AlgebraElement involution(const GroupoidTable& g, const AlgebraElement& f) {
  require(g.size(), f);
  AlgebraElement out(g.size());
  for (Index c = 0; c < g.size(); ++c) out[c] = conj(f[g.inverse(c)]);
  return out;
}

AlgebraElement involution(const RelationalGroupoid& g, const AlgebraElement& f) {
  require(g.size(), f);
  AlgebraElement out(g.size());
  for (Index c = 0; c < g.size(); ++c) out[c] = conj(f[g.inverse(c)]);
  return out;
}

AssociativityCheck check_associativity(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  return scan_associativity(structure_constants(g, mu), g.size());
}

AssociativityCheck check_associativity(const GroupoidTable& g, const RightHaarSystem& h) {
  return scan_associativity(structure_constants(g, h), g.size());
}

bool is_l2_invariant_fn(const RelationalGroupoid& g, const AlgebraElement& f) {
  require(g.size(), f);
  for (const auto& t : g.l2().tuples()) {
    if (f[t[0]] != f[t[1]]) return false;
  }
  return true;
}

AlgebraElement pullback(const QuotientData& qd, const AlgebraElement& f) {
  require(qd.quotient.size(), f);
  AlgebraElement out(qd.class_of.size());
  for (Index x = 0; x < qd.class_of.size(); ++x) {
    if (qd.class_of[x] != kUndefined) out[x] = f[qd.class_of[x]];
  }
  return out;
}

AlgebraElement push_invariant(const RelationalGroupoid& g, const QuotientData& qd, const AlgebraElement& f) {
  if (!is_l2_invariant_fn(g, f)) throw NotInvariant("function is not constant on L2-classes");
  AlgebraElement out(qd.classes.size());
  for (Index a = 0; a < qd.classes.size(); ++a) out[a] = f[qd.representative(a)];
  return out;
}

AlgebraElement push_split(const QuotientData& qd, const ClassMeasures& tau, const AlgebraElement& f) {
  require(qd.class_of.size(), f);
  AlgebraElement out(qd.classes.size());
  for (Index a = 0; a < qd.classes.size(); ++a) {
    auto it = tau.find(a);
    if (it == tau.end()) throw MeasureError("no class measure for class " + qd.quotient.morphisms().label(a));
    for (const auto& [x, w] : it->second.weights()) out[a] += f[x] * w;
  }
  return out;
}

std::vector<AlgebraElement> invariant_basis(const QuotientData& qd, std::size_t carrier_size) {
  std::vector<AlgebraElement> basis;
  for (const auto& cls : qd.classes) {
    AlgebraElement f(carrier_size);
    for (Index x : cls) f[x] = Complex(1);
    basis.push_back(std::move(f));
  }
  return basis;
}

Classification check_l2conv_lemma(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu,
                                  const AlgebraElement& f1, const AlgebraElement& f2) {
  const RightHaarSystem nu = induced_quotient_haar(qd, mu);
  const AlgebraElement lhs = convolve(g, mu, f1, f2);
  const AlgebraElement rhs =
      pullback(qd, convolve_groupoid(qd.quotient, nu, push_invariant(g, qd, f1), push_invariant(g, qd, f2)));
  for (Index x = 0; x < g.size(); ++x) {
    if (lhs[x] != rhs[x]) {
      return {false, "at " + g.carrier().label(x) + ": " + to_string(lhs[x]) + " vs " + to_string(rhs[x])};
    }
  }
  return {};
}

AlgebraElement ReducedAlgebra::restrict(const AlgebraElement& f) const {
  AlgebraElement out(f.size());
  for (Index x : constraint) out[x] = f[x];
  return out;
}

ReducedAlgebra reduce_algebra(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu) {
  ReducedAlgebra r;
  r.constraint = g.constraint_elements();
  r.basis = invariant_basis(qd, g.size());
  r.quotient_haar = induced_quotient_haar(qd, mu);
  return r;
}

Classification check_reduction_theorem(const RelationalGroupoid& g, const QuotientData& qd,
                                       const RelationalHaarSystem& mu) {
  const ReducedAlgebra r = reduce_algebra(g, qd, mu);
  const std::size_t m = qd.classes.size();
  const FiniteSet& Qm = qd.quotient.morphisms();
  std::vector<AlgebraElement> images;
  for (Index a = 0; a < m; ++a) {
    AlgebraElement img = push_invariant(g, qd, r.basis[a]);
    if (img != AlgebraElement::delta(m, a)) return {false, "Phi does not send the class of " + Qm.label(a) + " to its delta"};
    if (pullback(qd, img) != r.basis[a]) return {false, "q* o Phi is not the identity at " + Qm.label(a)};
    images.push_back(std::move(img));
  }
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      const AlgebraElement prod = r.restrict(convolve(g, mu, r.basis[a], r.basis[b]));
      if (!is_l2_invariant_fn(g, prod)) return {false, "product of classes " + triple(Qm, a, b) + " is not invariant"};
      const AlgebraElement lhs = push_invariant(g, qd, prod);
      const AlgebraElement rhs = convolve_groupoid(qd.quotient, r.quotient_haar, images[a], images[b]);
      if (lhs != rhs) return {false, "Phi is not multiplicative on classes " + triple(Qm, a, b)};
    }
  }
  return {};
}

Classification check_invariant_associativity(const RelationalGroupoid& g, const QuotientData& qd,
                                             const RelationalHaarSystem& mu) {
  const auto basis = invariant_basis(qd, g.size());
  const FiniteSet& Qm = qd.quotient.morphisms();
  for (Index a = 0; a < basis.size(); ++a) {
    for (Index b = 0; b < basis.size(); ++b) {
      const AlgebraElement ab = convolve(g, mu, basis[a], basis[b]);
      for (Index c = 0; c < basis.size(); ++c) {
        if (convolve(g, mu, ab, basis[c]) != convolve(g, mu, basis[a], convolve(g, mu, basis[b], basis[c]))) {
          return {false, "(" + Qm.label(a) + "," + Qm.label(b) + "," + Qm.label(c) + ")"};
        }
      }
    }
  }
  return {};
}

Classification verify_ideal(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  const std::size_t n = g.size();
  for (Index x = 0; x < n; ++x) {
    if (g.in_constraint(x)) continue;
    const AlgebraElement dx = AlgebraElement::delta(n, x);
    for (Index y = 0; y < n; ++y) {
      const AlgebraElement dy = AlgebraElement::delta(n, y);
      for (const AlgebraElement& p : {convolve(g, mu, dx, dy), convolve(g, mu, dy, dx)}) {
        for (Index z : p.support()) {
          if (g.in_constraint(z)) return {false, triple(g.carrier(), x, y) + " leaves the ideal at " + g.carrier().label(z)};
        }
      }
    }
  }
  return {};
}

Classification check_split_factorization(const RelationalGroupoid& g, const QuotientData& qd,
                                         const RelationalHaarSystem& mu, const ClassMeasures& tau) {
  const std::size_t n = g.size();
  const std::size_t m = qd.classes.size();
  for (Index a = 0; a < m; ++a) {
    if (push_split(qd, tau, pullback(qd, AlgebraElement::delta(m, a))) != AlgebraElement::delta(m, a)) {
      return {false, "q_* q* is not the identity at " + qd.quotient.morphisms().label(a)};
    }
  }
  const RightHaarSystem nu = induced_quotient_haar(qd, mu);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const AlgebraElement da = AlgebraElement::delta(n, a);
      const AlgebraElement db = AlgebraElement::delta(n, b);
      const AlgebraElement lhs = convolve(g, mu, da, db);
      const AlgebraElement rhs =
          pullback(qd, convolve_groupoid(qd.quotient, nu, push_split(qd, tau, da), push_split(qd, tau, db)));
      if (lhs != rhs) return {false, triple(g.carrier(), a, b)};
    }
  }
  return {};
}

}  // namespace relconv
