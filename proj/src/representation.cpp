#include "relconv/representation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace relconv {

namespace {

std::complex<double> to_double(const Complex& z) { return {z.re.get_d(), z.im.get_d()}; }

}  // namespace

Eigen::MatrixXcd RepMatrix::balanced() const {
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0) live.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(live.size());
  Eigen::MatrixXcd b(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      b(r, c) = matrix(live[r], live[c]) * std::sqrt(weights[live[r]]) / std::sqrt(weights[live[c]]);
    }
  }
  return b;
}

RepMatrix left_regular(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f, Index object) {
  if (object >= g.objects().size()) throw Error("no object with index " + std::to_string(object));
  if (f.size() != g.size()) throw Error("function does not match the groupoid");
  RepMatrix rep;
  rep.object = object;
  rep.morphisms = g.source_fiber(object);
  const auto n = static_cast<Eigen::Index>(rep.morphisms.size());
  const PointMeasure& mu = h.per_object.at(object);
  rep.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) rep.weights[i] = mu.weight(rep.morphisms[i]).get_d();
  rep.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      auto m = g.compose(rep.morphisms[r], g.inverse(rep.morphisms[c]));
      if (m) rep.matrix(r, c) = to_double(f[*m]) * rep.weights[c];
    }
  }
  return rep;
}

double spectral_norm(const Eigen::MatrixXcd& m, const PowerOptions& opts) {
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const Eigen::MatrixXcd a = (m / scale).adjoint() * (m / scale);

  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {gauss(rng), gauss(rng)};
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Eigen::VectorXcd w = a * v;
    const double next = v.dot(w).real();
    const double len = w.norm();
    if (len == 0.0) return 0.0;
    v = w / len;
    if (std::abs(next - lambda) <= opts.tolerance * std::max(1.0, next) && it > 0) {
      return scale * std::sqrt(std::max(next, 0.0));
    }
    lambda = next;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iterations) + " steps", v);
}

double reduced_norm(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f,
                    const PowerOptions& opts) {
  double best = 0.0;
  for (Index x = 0; x < g.objects().size(); ++x) {
    best = std::max(best, spectral_norm(left_regular(g, h, f, x).balanced(), opts));
  }
  return best;
}

}  // namespace relconv
