#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "relconv/error.hpp"
#include "relconv/rational.hpp"
#include "relconv/relation.hpp"

namespace relconv {

/// Finitely supported measure with nonnegative rational weights. Zero
/// weights are not stored, so equality is equality of measures.
template <class Key>
class Measure {
 public:
  Measure() = default;

  static Measure dirac(const Key& k) {
    Measure m;
    m.set(k, Rational(1));
    return m;
  }
  /// `weight` on every listed point.
  static Measure uniform(const std::vector<Key>& points, const Rational& weight) {
    Measure m;
    for (const auto& p : points) m.set(p, weight);
    return m;
  }

  void set(const Key& k, const Rational& w) {
    if (sgn(w) < 0) throw MeasureError("negative weight " + to_string(w));
    if (sgn(w) == 0) {
      weights_.erase(k);
    } else {
      weights_[k] = w;
    }
  }
  void add(const Key& k, const Rational& w) { set(k, weight(k) + w); }

  Rational weight(const Key& k) const {
    auto it = weights_.find(k);
    return it == weights_.end() ? Rational(0) : it->second;
  }
  Rational total_mass() const {
    Rational t = 0;
    for (const auto& [k, w] : weights_) t += w;
    return t;
  }
  bool empty() const { return weights_.empty(); }
  bool is_probability() const { return total_mass() == 1; }
  const std::map<Key, Rational>& weights() const { return weights_; }

  Measure scaled(const Rational& s) const {
    Measure m;
    for (const auto& [k, w] : weights_) m.set(k, w * s);
    return m;
  }

  friend bool operator==(const Measure& a, const Measure& b) { return a.weights_ == b.weights_; }
  friend bool operator!=(const Measure& a, const Measure& b) { return !(a == b); }

 private:
  std::map<Key, Rational> weights_;
};

using PointMeasure = Measure<Index>;
using PairMeasure = Measure<std::pair<Index, Index>>;

/// (f_* m)(y) = sum over f(x) = y of m(x). `f` returns nullopt where it is
/// undefined; throws MeasureError if that happens on the support.
template <class From, class To>
Measure<To> pushforward(const Measure<From>& m, const std::function<std::optional<To>(const From&)>& f) {
  Measure<To> out;
  for (const auto& [k, w] : m.weights()) {
    auto y = f(k);
    if (!y) throw MeasureError("pushforward: map is not total on the support");
    out.add(*y, w);
  }
  return out;
}

/// Pushforward of a point measure along a relation X -/-> Y that must be
/// functional on the support.
PointMeasure pushforward(const PointMeasure& m, const Relation& f);

}  // namespace relconv
