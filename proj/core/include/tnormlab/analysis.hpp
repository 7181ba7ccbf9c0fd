#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tnormlab/grid.hpp"
#include "tnormlab/report.hpp"
#include "tnormlab/tnorm.hpp"

namespace tnormlab {

/// Commutativity, associativity, monotonicity and the neutral element, all
/// at strict_tol. Axioms are checked in the order T4, T1, T3, T2; the
/// witness is the largest violation of the first axiom that fails.
/// Associativity uses the assoc_points triple grid (or the full grid with
/// assoc_full) plus `samples` random triples when the main grid is finer.
Report check_axioms(const TNormSpec& spec, const GridSpec& grid);

/// F(x,y) := T(x, x*y).
CompanionF canonical_f(const TNormSpec& spec);

/// T(x,y) = F(max, min/max), and 0 at the origin.
UnitValue reconstruct_t_from_f(const CompanionF& f, UnitValue x, UnitValue y);

/// |T(lambda x, lambda y) - F(lambda, T(x,y))| at one triple.
Witness gph_residual_at(const TNormSpec& spec, const CompanionF& f, double lambda, double x,
                        double y);

/// Sweeps every grid triple (lambda, x, y), then `samples` seeded random
/// triples. Passes iff the max residual is <= eq_tol; the witness is the
/// first maximal-gap triple in scan order.
Report check_gph(const TNormSpec& spec, const CompanionF& f, const GridSpec& grid);

/// Same sweep against canonical_f(spec).
Report check_gph(const TNormSpec& spec, const GridSpec& grid);

/// F(1,t) = t on the grid, forced by T4 whenever the functional equation
/// holds. Cheap pre-check before a full sweep.
Report check_lambda_one(const CompanionF& f, const GridSpec& grid);

/// Continuity, monotonicity and F(x,1) = 0 <=> x = 0 for a companion.
/// Reports the first failing condition in that order.
Report check_pseudo_homogeneous(const CompanionF& f, const GridSpec& grid);

/// Passes iff every probe's T-powers drop below `floor` within n_max steps.
/// Metadata "n_min@<probe>" holds the first such n.
Report check_archimedean(const TNormSpec& spec, std::span<const UnitValue> probes, int n_max,
                         double floor);

struct DiagonalScan {
  std::vector<double> nodes;
  std::vector<double> values;
  std::size_t monotone_violations = 0;
  double max_drop = 0.0;
  bool strictly_increasing = false;  ///< on the interior grid
  bool identity_on_interior = false;
  bool zero_on_interior = false;
  double limit_probe = 1.0;          ///< 1 - step_h
  double limit_at_one = 1.0;         ///< diagonal at limit_probe
  bool limit_is_zero = false;
  bool limit_is_one = false;
  /// Smallest interior grid x with T(x,x) >= x - eq_tol, reported only when
  /// every interior grid point below it has a zero diagonal.
  std::optional<double> shelf_edge;
  /// Largest interior grid point of the zero plateau below shelf_edge.
  std::optional<double> plateau_end;
  bool identity_after_edge = false;
};

DiagonalScan analyze_diagonal(const TNormSpec& spec, const GridSpec& grid);

/// Monotonicity of the diagonal plus the limit dichotomy at 1 (the limit
/// must be 0 or 1 within 10 * step_h).
Report scan_diagonal(const TNormSpec& spec, const GridSpec& grid);

/// Evaluates T = min, F = xy, F commutative, F(x,1) = x on the canonical
/// companion. Passes iff all four agree; metadata "truth" holds e.g. "TTTT".
Report check_tm_equivalences(const TNormSpec& spec, const GridSpec& grid);

/// Grid-based continuity heuristic. The largest grid-edge jumps are refined
/// by bisection along their edge; a jump that keeps at least half its size
/// after refinement is treated as a discontinuity.
struct ContinuityScan {
  double max_grid_jump = 0.0;
  double persistent_jump = 0.0;
  bool continuous = true;
  /// Endpoints of the refined discontinuity when !continuous.
  double p_first = 0.0, p_second = 0.0, q_first = 0.0, q_second = 0.0;
  double p_value = 0.0, q_value = 0.0;
};

ContinuityScan scan_continuity(const std::function<double(double, double)>& fn,
                               const GridSpec& grid);

/// Passes iff T and canonical F are both continuous or both discontinuous.
Report check_continuity_equivalence(const TNormSpec& spec, const GridSpec& grid);

/// Intrinsic functional-equation sweep plus, for ordinal sums, the targeted
/// triples lambda = a/y (a < y < x < e) and lambda = x/e at x = y = e
/// (e^2 < x < e). Returns the largest-gap witness found.
Report find_gph_counterexample(const TNormSpec& spec, const GridSpec& grid);

/// Every grid triple as "lambda,x,y,lhs,rhs,residual" rows after a header.
void write_gph_csv(std::ostream& os, const TNormSpec& spec, const CompanionF& f,
                   const GridSpec& grid);

}  // namespace tnormlab
