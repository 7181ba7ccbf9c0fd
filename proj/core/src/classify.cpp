#include "tnormlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"
#include "tnormlab/analysis.hpp"
#include "tnormlab/errors.hpp"
#include "tnormlab/report.hpp"

namespace tnormlab {

namespace {

constexpr double kBetaMin = 1e-3;
constexpr double kBetaMax = 60.0;
constexpr int kScanPoints = 240;
constexpr std::size_t kMinSamples = 50;
constexpr std::size_t kMaxSamples = 2000;
constexpr double kProductSeparation = 1e-6;
constexpr double kMinBracketedFraction = 0.8;

double T(const TNormSpec& spec, double x, double y) {
  return eval_tnorm(spec, UnitValue(x), UnitValue(y)).value();
}

// h scaled by a positive factor so that neither side of the range overflows.
double scaled_h(const BetaSample& s, double beta) {
  if (beta > 0.0) return std::pow(s.x, beta) + std::pow(s.y, beta) - 1.0 - std::pow(s.t, beta);
  return std::pow(s.x / s.t, beta) + std::pow(s.y / s.t, beta) - std::pow(s.t, -beta) - 1.0;
}

const std::vector<double>& scan_magnitudes() {
  static const std::vector<double> mags = [] {
    std::vector<double> m(kScanPoints);
    const double ratio = std::log(kBetaMax / kBetaMin);
    for (int k = 0; k < kScanPoints; ++k) {
      m[static_cast<std::size_t>(k)] = kBetaMin * std::exp(ratio * k / (kScanPoints - 1));
    }
    m.back() = kBetaMax;
    return m;
  }();
  return mags;
}

double max_deviation(const TNormSpec& spec, const TNormSpec& candidate, const GridSpec& grid) {
  const std::vector<double> nodes = grid.offset_nodes();
  double worst = 0.0;
  for (double x : nodes) {
    for (double y : nodes) worst = std::max(worst, std::abs(T(spec, x, y) - T(candidate, x, y)));
  }
  return worst;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Candidate {
  Family family;
  std::optional<double> parameter;
  TNormSpec spec;
  double residual = 0.0;
  bool validated = false;
};

std::string describe(const Candidate& c) {
  std::string s = "max deviation " + format_number(c.residual) + " on offset grid";
  if (c.parameter) s = "parameter " + format_number(*c.parameter) + ", " + s;
  return s;
}

// Shrinks (lo, hi] around the shelf edge until it is narrower than step_h / 2.
double refine_shelf_edge(const TNormSpec& spec, double lo, double hi, const GridSpec& grid) {
  auto on_shelf = [&](double x) { return diagonal(spec, UnitValue(x)).value() >= x - grid.eq_tol; };
  while (hi - lo >= 0.5 * grid.step_h) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (on_shelf(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Minimum: return "Minimum";
    case Family::SchweizerSklarPos: return "SchweizerSklarPos";
    case Family::Product: return "Product";
    case Family::SchweizerSklarNeg: return "SchweizerSklarNeg";
    case Family::CShelf: return "CShelf";
    case Family::Drastic: return "Drastic";
    case Family::NotGPH: return "NotGPH";
  }
  return "NotGPH";
}

bool is_parametric(Family f) noexcept {
  return f == Family::SchweizerSklarPos || f == Family::SchweizerSklarNeg || f == Family::CShelf;
}

std::string to_json(const ClassificationResult& result, int indent) {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_name(result.family));
  j["parameter"] = result.parameter ? nlohmann::ordered_json(*result.parameter) : nullptr;
  j["residual"] = std::isfinite(result.residual) ? nlohmann::ordered_json(result.residual) : nullptr;
  nlohmann::ordered_json ev = nlohmann::ordered_json::array();
  for (const Evidence& e : result.evidence) {
    ev.push_back({{"test", e.test}, {"passed", e.passed}, {"detail", e.detail}});
  }
  j["evidence"] = std::move(ev);
  return j.dump(indent);
}

// ---------------------------------------------------------------------------

std::optional<double> solve_beta(const BetaSample& s) {
  if (!(s.t > 0.0 && s.t < 1.0) || !(s.x > 0.0 && s.y > 0.0)) return std::nullopt;
  const double xy = s.x * s.y;
  if (s.t == xy) return std::nullopt;
  const double sign = s.t < xy ? 1.0 : -1.0;

  const std::vector<double>& mags = scan_magnitudes();
  double lo = sign * mags.front();
  double h_lo = scaled_h(s, lo);
  if (h_lo == 0.0) return lo;
  for (std::size_t k = 1; k < mags.size(); ++k) {
    const double hi = sign * mags[k];
    const double h_hi = scaled_h(s, hi);
    if (h_hi == 0.0) return hi;
    if ((h_lo < 0.0) != (h_hi < 0.0)) {
      double a = lo, b = hi;
      const bool a_negative = h_lo < 0.0;
      for (;;) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double hm = scaled_h(s, mid);
        if (hm == 0.0) return mid;
        ((hm < 0.0) == a_negative ? a : b) = mid;
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    h_lo = h_hi;
  }
  return std::nullopt;
}

BetaFit fit_beta_samples(std::span<const BetaSample> samples) {
  if (samples.size() < kMinSamples) {
    throw FitFailure("only " + std::to_string(samples.size()) + " usable samples, need " +
                     std::to_string(kMinSamples));
  }
  std::vector<double> roots;
  roots.reserve(samples.size());
  for (const BetaSample& s : samples) {
    if (auto r = solve_beta(s)) roots.push_back(*r);
  }
  const double fraction = static_cast<double>(roots.size()) / static_cast<double>(samples.size());
  if (fraction < kMinBracketedFraction) {
    throw FitFailure("bracketed " + std::to_string(roots.size()) + " of " +
                     std::to_string(samples.size()) + " samples");
  }
  BetaFit fit;
  fit.beta = median(std::move(roots));
  fit.samples = samples.size();
  fit.bracketed = static_cast<std::size_t>(fraction * static_cast<double>(samples.size()) + 0.5);
  return fit;
}

BetaFit fit_beta(const TNormSpec& spec, const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  std::vector<BetaSample> pool;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    for (std::size_t j = i; j + 1 < nodes.size(); ++j) {
      const double x = nodes[i];
      const double y = nodes[j];
      const double t = T(spec, x, y);
      if (t > 0.0 && t < 1.0 && std::abs(t - x * y) > kProductSeparation) pool.push_back({x, y, t});
    }
  }
  std::vector<BetaSample> samples;
  const std::size_t stride = (pool.size() + kMaxSamples - 1) / kMaxSamples;
  for (std::size_t k = 0; k < pool.size(); k += std::max<std::size_t>(1, stride)) {
    samples.push_back(pool[k]);
  }
  BetaFit fit = fit_beta_samples(samples);
  if (std::abs(fit.beta) < TNormSpec::kMinAbsBeta) {
    throw FitFailure("estimate " + format_number(fit.beta) + " collapses to the product limit");
  }
  fit.residual = max_deviation(spec, TNormSpec::schweizer_sklar(fit.beta), grid);
  return fit;
}

// ---------------------------------------------------------------------------

ClassificationResult classify(const TNormSpec& spec, const GridSpec& grid) {
  grid.validate();
  ClassificationResult result;

  const Report axioms = check_axioms(spec, grid);
  if (!axioms.passed) {
    const auto it = axioms.metadata.find("witness_desc");
    throw PreconditionError("input is not a t-norm: " +
                            (it != axioms.metadata.end() ? it->second : summary(axioms)));
  }
  result.evidence.push_back({"axioms", true, "max residual " + format_number(axioms.max_residual)});

  const DiagonalScan diag = analyze_diagonal(spec, grid);
  std::optional<Family> decided;
  std::optional<double> c_hat;

  // (1) idempotent diagonal
  result.evidence.push_back({"diagonal_identity", diag.identity_on_interior,
                             diag.identity_on_interior ? "T(x,x) = x on the grid"
                                                       : "T(x,x) < x somewhere on the grid"});
  if (diag.identity_on_interior) decided = Family::Minimum;

  // (2) zero plateau followed by the identity
  if (!decided) {
    if (diag.shelf_edge && diag.identity_after_edge) {
      c_hat = refine_shelf_edge(spec, *diag.plateau_end, *diag.shelf_edge, grid);
      if (*c_hat > 0.0 && *c_hat < 1.0) {
        decided = Family::CShelf;
        result.evidence.push_back(
            {"shelf_edge", true, "zero plateau up to " + format_number(*diag.plateau_end) +
                                     ", identity from " + format_number(*diag.shelf_edge) +
                                     ", refined edge " + format_number(*c_hat)});
      } else {
        c_hat.reset();
      }
    } else if (diag.zero_on_interior) {
      decided = Family::Drastic;
      result.evidence.push_back({"shelf_edge", false, "diagonal vanishes on the whole interior"});
    } else {
      result.evidence.push_back({"shelf_edge", false, "no zero plateau followed by the identity"});
    }
  }

  // (3) product
  double product_gap = 0.0;
  {
    const std::vector<double> nodes = grid.nodes();
    for (double x : nodes) {
      for (double y : nodes) product_gap = std::max(product_gap, std::abs(T(spec, x, y) - x * y));
    }
  }
  const bool product_like = product_gap <= grid.eq_tol;
  if (!decided) {
    result.evidence.push_back({"product_match", product_like,
                               "max |T - xy| on grid " + format_number(product_gap)});
    if (product_like) decided = Family::Product;
  }

  // (4) Schweizer-Sklar fit
  std::optional<double> beta_hat;
  try {
    const BetaFit fit = fit_beta(spec, grid);
    beta_hat = fit.beta;
    if (!decided) decided = fit.beta > 0.0 ? Family::SchweizerSklarPos : Family::SchweizerSklarNeg;
    result.evidence.push_back({"fit_beta", true,
                               "median root " + format_number(fit.beta) + " from " +
                                   std::to_string(fit.bracketed) + " of " +
                                   std::to_string(fit.samples) + " samples"});
  } catch (const FitFailure& e) {
    result.evidence.push_back({"fit_beta", false, e.what()});
  }

  std::vector<Candidate> candidates;
  candidates.push_back({Family::Minimum, std::nullopt, TNormSpec::minimum()});
  if (beta_hat) {
    candidates.push_back({*beta_hat > 0.0 ? Family::SchweizerSklarPos : Family::SchweizerSklarNeg,
                          beta_hat, TNormSpec::schweizer_sklar(*beta_hat)});
  }
  candidates.push_back({Family::Product, std::nullopt, TNormSpec::product()});
  if (c_hat) candidates.push_back({Family::CShelf, c_hat, TNormSpec::cshelf(*c_hat)});
  candidates.push_back({Family::Drastic, std::nullopt, TNormSpec::drastic()});

  for (Candidate& c : candidates) {
    c.residual = max_deviation(spec, c.spec, grid);
    c.validated = c.residual <= grid.eq_tol;
    result.evidence.push_back(
        {"validate:" + std::string(family_name(c.family)), c.validated, describe(c)});
  }

  const Candidate* chosen = nullptr;
  for (const Candidate& c : candidates) {
    if (decided && c.family == *decided && c.validated) chosen = &c;
  }
  if (!chosen) {
    for (const Candidate& c : candidates) {
      if (c.validated && (!chosen || c.residual < chosen->residual)) chosen = &c;
    }
  }

  if (chosen) {
    result.family = chosen->family;
    result.parameter = chosen->parameter;
    result.residual = chosen->residual;
    return result;
  }

  result.family = Family::NotGPH;
  result.residual = candidates.front().residual;
  for (const Candidate& c : candidates) result.residual = std::min(result.residual, c.residual);
  const Report cx = find_gph_counterexample(spec, grid);
  std::string detail;
  if (cx.witness) {
    const Witness& w = *cx.witness;
    detail = "witness lambda=" + format_number(w.lambda) + " x=" + format_number(w.x) +
             " y=" + format_number(w.y) + " gap=" + format_number(w.gap);
    if (auto it = cx.metadata.find("witness_desc"); it != cx.metadata.end()) {
      detail += ": " + it->second;
    }
  } else {
    detail = "no functional-equation violation found on the grid";
  }
  result.evidence.push_back({"gph_counterexample", cx.passed, detail});
  return result;
}

}  // namespace tnormlab
