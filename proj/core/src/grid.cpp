#include "tnormlab/grid.hpp"

#include <string>

#include "tnormlab/errors.hpp"

namespace tnormlab {

void GridSpec::validate() const {
  if (points < 3) throw InvalidSpec("grid needs at least 3 points");
  if (assoc_points < 3) throw InvalidSpec("associativity grid needs at least 3 points");
  if (!(eq_tol > 0.0) || !(strict_tol > 0.0)) throw InvalidSpec("tolerances must be positive");
  if (samples < 0) throw InvalidSpec("sample count must be non-negative");
  if (!(step_h > 0.0 && step_h <= 1e-2)) throw InvalidSpec("step_h must lie in (0, 1e-2]");
}

std::vector<double> uniform_nodes(int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return out;
}

std::vector<double> GridSpec::nodes() const { return uniform_nodes(points); }

std::vector<double> GridSpec::offset_nodes() const {
  std::vector<double> out(static_cast<std::size_t>(points - 1));
  for (int i = 0; i + 1 < points; ++i) {
    out[static_cast<std::size_t>(i)] = (i + 0.5) / (points - 1);
  }
  return out;
}

}  // namespace tnormlab
