#pragma once

#include <cstdint>
#include <vector>

namespace tnormlab {

/// Resolution, tolerances and sampling for every numerical sweep.
struct GridSpec {
  int points = 101;             ///< uniform inclusive grid on [0,1]
  double eq_tol = 1e-9;         ///< anything involving fractional pow
  double strict_tol = 1e-12;    ///< closed-form families
  int samples = 10000;          ///< seeded random triples added to sweeps
  std::uint64_t seed = 0xC0FFEE;
  double step_h = 1e-6;         ///< one-sided limit probes
  int assoc_points = 41;        ///< triple grid for associativity
  bool assoc_full = false;      ///< use `points` for the associativity grid

  /// Throws InvalidSpec when an invariant is violated.
  void validate() const;

  double spacing() const noexcept { return 1.0 / (points - 1); }
  double node(int i) const noexcept { return static_cast<double>(i) / (points - 1); }
  std::vector<double> nodes() const;
  /// Midpoints between grid nodes, the off-grid validation lattice.
  std::vector<double> offset_nodes() const;
};

std::vector<double> uniform_nodes(int points);

}  // namespace tnormlab
