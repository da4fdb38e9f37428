#include "relconv/measure.hpp"

namespace relconv {

PointMeasure pushforward(const PointMeasure& m, const Relation& f) {
  if (f.domain().size() != 1 || f.codomain().size() != 1) {
    throw ArityMismatch(0, "pushforward: relation must be X -/-> Y");
  }
  const std::size_t ny = f.codomain()[0].size();
  return pushforward<Index, Index>(m, [&](const Index& x) -> std::optional<Index> {
    std::optional<Index> image;
    for (Index y = 0; y < ny; ++y) {
      if (!f.contains({x, y})) continue;
      if (image) throw MeasureError("pushforward: relation is not functional on the support");
      image = y;
    }
    return image;
  });
}

}  // namespace relconv
