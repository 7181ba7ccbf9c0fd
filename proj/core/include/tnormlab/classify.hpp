#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tnormlab/grid.hpp"
#include "tnormlab/tnorm.hpp"

namespace tnormlab {

enum class Family {
  Minimum,
  SchweizerSklarPos,
  Product,
  SchweizerSklarNeg,
  CShelf,
  Drastic,
  NotGPH,
};

std::string_view family_name(Family f) noexcept;
bool is_parametric(Family f) noexcept;

struct Evidence {
  std::string test;
  bool passed = false;
  std::string detail;
};

struct ClassificationResult {
  Family family = Family::NotGPH;
  std::optional<double> parameter;  ///< beta or c
  double residual = 0.0;            ///< validation-grid deviation of the verdict
  std::vector<Evidence> evidence;
};

/// {family, parameter, residual, evidence:[{test, passed, detail}]}
std::string to_json(const ClassificationResult& result, int indent = 2);

struct BetaSample {
  double x;
  double y;
  double t;  ///< observed T(x,y)
};

struct BetaFit {
  double beta = 0.0;
  double residual = 0.0;       ///< max |T - SS(beta)| on the offset grid (fit_beta only)
  std::size_t samples = 0;     ///< samples offered
  std::size_t bracketed = 0;   ///< samples whose root was found
};

/// Nonzero root of x^b + y^b - 1 - t^b. The sign of the root follows
/// t < xy (positive) or t > xy (negative). nullopt when no sign change
/// appears on the search range.
std::optional<double> solve_beta(const BetaSample& s);

/// Median of per-sample roots. Throws FitFailure when fewer than 50
/// samples are offered or 20% or more fail to bracket.
BetaFit fit_beta_samples(std::span<const BetaSample> samples);

/// Draws samples from interior grid pairs with t in (0,1) and |t - xy| > 1e-6,
/// then fits and validates on the offset grid.
BetaFit fit_beta(const TNormSpec& spec, const GridSpec& grid);

/// Throws PreconditionError when spec fails check_axioms.
ClassificationResult classify(const TNormSpec& spec, const GridSpec& grid);

}  // namespace tnormlab
