#pragma once

#include <map>
#include <optional>
#include <string>

namespace tnormlab {

/// A certificate for a failed check. For functional-equation sweeps the
/// triple is (lambda, x, y) with lhs = T(lambda x, lambda y) and
/// rhs = F(lambda, T(x,y)). Axiom and companion checks reuse the three slots
/// for their own arguments; the Report metadata key "witness_desc" spells
/// out the instance.
struct Witness {
  double lambda = 0.0;
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

struct Report {
  std::string check_name;
  bool passed = true;
  double max_residual = 0.0;
  std::optional<Witness> witness;
  std::map<std::string, std::string> metadata;
};

/// Builds a report that honours passed <=> no witness <=> residual <= tol.
Report make_report(std::string check_name, double max_residual, double tolerance,
                   std::optional<Witness> witness);

/// Keys: check, passed, max_residual, witness{lambda,x,y,lhs,rhs,gap} or
/// null, metadata. Deterministic byte-for-byte.
std::string to_json(const Report& report, int indent = 2);

/// One line, e.g. "gph PASS max_residual=0 (...)".
std::string summary(const Report& report);

/// Shortest representation that round-trips.
std::string format_number(double v);

}  // namespace tnormlab
