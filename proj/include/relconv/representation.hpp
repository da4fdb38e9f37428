#pragma once

#include <Eigen/Dense>

#include <vector>

#include "relconv/convolution.hpp"
#include "relconv/error.hpp"
#include "relconv/groupoid_table.hpp"
#include "relconv/haar.hpp"

namespace relconv {

/// lambda_x(f) on L^2(G_x, mu_x), in double precision. Rows and columns are
/// indexed by `morphisms`, the source fiber of `object`.
struct RepMatrix {
  Index object = kUndefined;
  std::vector<Index> morphisms;
  /// M[c, e] = f(c o e^-1) mu_x(e), so (M h)(c) = (f * h)(c).
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd weights;

  /// sqrt(W) M sqrt(W)^-1 restricted to the support of mu_x. Its spectral norm
  /// is the operator norm of lambda_x(f) in the mu_x-weighted inner product.
  Eigen::MatrixXcd balanced() const;
};

RepMatrix left_regular(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f, Index object);

/// Raised when power iteration does not settle. Carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXcd last) : Error(what), last_(std::move(last)) {}
  const Eigen::VectorXcd& last_iterate() const { return last_; }

 private:
  Eigen::VectorXcd last_;
};

struct PowerOptions {
  double tolerance = 1e-12;
  int max_iterations = 10000;
  unsigned seed = 0x5eed;
};

/// Largest singular value of `m` by power iteration on m* m.
double spectral_norm(const Eigen::MatrixXcd& m, const PowerOptions& opts = {});

/// sup over objects of the operator norm of lambda_x(f).
double reduced_norm(const GroupoidTable& g, const RightHaarSystem& h, const AlgebraElement& f,
                    const PowerOptions& opts = {});

}  // namespace relconv
