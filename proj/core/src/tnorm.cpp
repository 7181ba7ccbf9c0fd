#include "tnormlab/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tnormlab/report.hpp"

namespace tnormlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string point_text(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

// Schweizer-Sklar kernel on (0,1]^2.
double schweizer_sklar(double beta, double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  if (x == 1.0) return y;
  if (y == 1.0) return x;
  const double s = std::pow(x, beta) + std::pow(y, beta) - 1.0;
  if (beta > 0.0 && s <= 0.0) return 0.0;
  const double r = to_unit_checked(std::pow(s, 1.0 / beta), x, y, "Schweizer-Sklar");
  return std::min(r, std::min(x, y));
}

double cshelf(double c, double x, double y) {
  const bool interior = x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0;
  if (interior && !(x >= c && y >= c)) return 0.0;
  return std::min(x, y);
}

double lukasiewicz(double x, double y) {
  if (x == 1.0) return y;
  if (y == 1.0) return x;
  return std::max(x + y - 1.0, 0.0);
}

double drastic(double x, double y) {
  if (x == 1.0) return y;
  if (y == 1.0) return x;
  return 0.0;
}

double eval_expr(const family::Expr& e, double x, double y) {
  if (e.zero_guard && (x == 0.0 || y == 0.0)) return 0.0;
  double raw = 0.0;
  try {
    raw = dsl::evaluate(e.expression, x, y);
  } catch (const dsl::EvalError& err) {
    throw DomainError(std::string("expression evaluation failed at ") + point_text(x, y) + ": " +
                          err.what(),
                      x, y);
  }
  return to_unit_checked(raw, x, y, "expression");
}

double eval_raw(const TNormSpec& spec, double x, double y);

double eval_ordinal_sum(const family::OrdinalSum& os, double x, double y) {
  for (const Summand& s : os.summands) {
    if (x > s.lower && x < s.upper && y > s.lower && y < s.upper) {
      const double width = s.upper - s.lower;
      const double u = (x - s.lower) / width;
      const double v = (y - s.lower) / width;
      const double inner = eval_raw(s.inner, u, v);
      const double r = s.lower + width * inner;
      return std::clamp(r, s.lower, std::min(x, y));
    }
  }
  return std::min(x, y);
}

double eval_raw(const TNormSpec& spec, double x, double y) {
  return std::visit(
      Overloaded{
          [&](const family::Minimum&) { return std::min(x, y); },
          [&](const family::Product&) { return x * y; },
          [&](const family::Lukasiewicz&) { return lukasiewicz(x, y); },
          [&](const family::Drastic&) { return drastic(x, y); },
          [&](const family::SchweizerSklar& ss) { return schweizer_sklar(ss.beta, x, y); },
          [&](const family::CShelf& cs) { return cshelf(cs.c, x, y); },
          [&](const family::OrdinalSum& os) { return eval_ordinal_sum(os, x, y); },
          [&](const family::Expr& e) { return eval_expr(e, x, y); },
      },
      spec.variant());
}

// Closed-form companion of each catalog family.
double catalog_companion(const TNormSpec& of, double x, double y) {
  const double xy = x * y;
  return std::visit(
      Overloaded{
          [&](const family::Minimum&) { return xy; },
          [&](const family::Product&) { return x * x * y; },
          [&](const family::Lukasiewicz&) { return std::max(x + xy - 1.0, 0.0); },
          [&](const family::Drastic&) { return x < 1.0 ? 0.0 : y; },
          [&](const family::SchweizerSklar& ss) {
            if (x == 0.0 || xy == 0.0) return 0.0;
            double s = std::pow(x, ss.beta) + std::pow(xy, ss.beta) - 1.0;
            if (ss.beta > 0.0) s = std::max(s, 0.0);
            if (s == 0.0) return 0.0;
            const double r = to_unit_checked(std::pow(s, 1.0 / ss.beta), x, y, "companion");
            return std::min(r, xy);
          },
          [&](const family::CShelf& cs) {
            const bool interior = x > 0.0 && x < 1.0 && xy > 0.0 && xy < 1.0;
            if (interior && !(x >= cs.c && xy >= cs.c)) return 0.0;
            return xy;
          },
          [&](const family::OrdinalSum&) -> double {
            throw InvalidSpec("ordinal sums have no catalog companion");
          },
          [&](const family::Expr&) -> double {
            throw InvalidSpec("expressions have no catalog companion");
          },
      },
      of.variant());
}

}  // namespace

double to_unit_checked(double raw, double x, double y, const char* what) {
  if (std::isnan(raw) || raw < -kClampSlack || raw > 1.0 + kClampSlack) {
    std::ostringstream os;
    os.precision(17);
    os << what << " value " << raw << " outside [0,1] at " << point_text(x, y);
    throw DomainError(os.str(), x, y);
  }
  return std::clamp(raw, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// TNormSpec

TNormSpec::TNormSpec(TNormVariant v) : data_(std::make_shared<const TNormVariant>(std::move(v))) {}

TNormSpec TNormSpec::minimum() { return TNormSpec(family::Minimum{}); }
TNormSpec TNormSpec::product() { return TNormSpec(family::Product{}); }
TNormSpec TNormSpec::lukasiewicz() { return TNormSpec(family::Lukasiewicz{}); }
TNormSpec TNormSpec::drastic() { return TNormSpec(family::Drastic{}); }

TNormSpec TNormSpec::schweizer_sklar(double beta) {
  if (!std::isfinite(beta) || std::abs(beta) < kMinAbsBeta) {
    throw InvalidSpec("Schweizer-Sklar beta must be finite with |beta| >= 1e-3 (use the "
                      "product kind for beta -> 0), got " +
                      format_number(beta));
  }
  return TNormSpec(family::SchweizerSklar{beta});
}

TNormSpec TNormSpec::cshelf(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw InvalidSpec("c-shelf parameter must lie in (0,1), got " + format_number(c));
  }
  return TNormSpec(family::CShelf{c});
}

TNormSpec TNormSpec::ordinal_sum(std::vector<Summand> summands) {
  if (summands.empty()) throw InvalidSpec("ordinal sum needs at least one summand");
  std::sort(summands.begin(), summands.end(),
            [](const Summand& a, const Summand& b) { return a.lower < b.lower; });
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const Summand& s = summands[i];
    if (!(s.lower >= 0.0 && s.upper <= 1.0 && s.lower < s.upper)) {
      throw InvalidSpec("ordinal-sum summand needs 0 <= a < e <= 1");
    }
    if (i > 0 && summands[i - 1].upper > s.lower) {
      throw InvalidSpec("ordinal-sum summands overlap");
    }
  }
  return TNormSpec(family::OrdinalSum{std::move(summands)});
}

TNormSpec TNormSpec::expr(dsl::Expression expression, ZeroGuard guard) {
  return TNormSpec(family::Expr{std::move(expression), guard == ZeroGuard::On});
}

TNormKind TNormSpec::kind() const noexcept { return static_cast<TNormKind>(data_->index()); }

// ---------------------------------------------------------------------------
// CompanionF

bool has_catalog_companion(const TNormSpec& spec) {
  return spec.kind() != TNormKind::OrdinalSum && spec.kind() != TNormKind::Expr;
}

CompanionF CompanionF::catalog(const TNormSpec& of) {
  if (!has_catalog_companion(of)) {
    throw InvalidSpec("no catalog companion for " + of.to_string());
  }
  return CompanionF(companion::Catalog{of});
}

CompanionF CompanionF::canonical(const TNormSpec& of) { return CompanionF(companion::Canonical{of}); }

CompanionF CompanionF::expr(dsl::Expression expression) {
  return CompanionF(companion::Expr{std::move(expression)});
}

std::string CompanionF::to_string() const {
  return std::visit(Overloaded{
                        [](const companion::Catalog& c) { return "catalog(" + c.of.to_string() + ")"; },
                        [](const companion::Canonical& c) {
                          return "canonical(" + c.of.to_string() + ")";
                        },
                        [](const companion::Expr& e) { return "expr:" + dsl::to_string(e.expression); },
                    },
                    data_);
}

// ---------------------------------------------------------------------------
// Evaluation

UnitValue eval_tnorm(const TNormSpec& spec, UnitValue x, UnitValue y) {
  return UnitValue(eval_raw(spec, x.value(), y.value()));
}

UnitValue eval_companion(const CompanionF& f, UnitValue x, UnitValue y) {
  return std::visit(
      Overloaded{
          [&](const companion::Catalog& c) {
            return UnitValue(catalog_companion(c.of, x.value(), y.value()));
          },
          [&](const companion::Canonical& c) {
            return eval_tnorm(c.of, x, UnitValue(x.value() * y.value()));
          },
          [&](const companion::Expr& e) {
            double raw = 0.0;
            try {
              raw = dsl::evaluate(e.expression, x.value(), y.value());
            } catch (const dsl::EvalError& err) {
              throw DomainError(std::string("companion evaluation failed at ") +
                                    point_text(x, y) + ": " + err.what(),
                                x, y);
            }
            return UnitValue(to_unit_checked(raw, x, y, "companion expression"));
          },
      },
      f.variant());
}

UnitValue diagonal(const TNormSpec& spec, UnitValue x) { return eval_tnorm(spec, x, x); }

UnitValue t_power(const TNormSpec& spec, UnitValue x, int n) {
  if (n < 1) throw InvalidSpec("t-power exponent must be >= 1");
  UnitValue acc = x;
  for (int i = 1; i < n; ++i) acc = eval_tnorm(spec, x, acc);
  return acc;
}

UnitValue diagonal_pseudo_inverse(const TNormSpec& spec, UnitValue y, double tol) {
  if (!(tol > 0.0)) throw InvalidSpec("pseudo-inverse tolerance must be positive");

  constexpr int kSamples = 1024;
  double prev = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double z = static_cast<double>(i) / kSamples;
    const double d = diagonal(spec, UnitValue(z));
    if (d < prev - 1e-12) {
      throw StructuralError("diagonal of " + spec.to_string() + " decreases near z=" +
                            std::to_string(z));
    }
    prev = d;
  }

  if (diagonal(spec, UnitValue::one()) <= y) return UnitValue::one();
  double lo = 0.0;  // diagonal(lo) <= y
  double hi = 1.0;  // diagonal(hi) > y
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (diagonal(spec, UnitValue(mid)) <= y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return UnitValue(0.5 * (lo + hi));
}

// ---------------------------------------------------------------------------

std::vector<FamilyEntry> family_catalog() {
  return {
      {"minimum", "min", "min{x,y}", "x*y", {TNormSpec::minimum()}},
      {"schweizer-sklar (beta > 0)", "ss:<beta>",
       "(max{x^b + y^b - 1, 0})^(1/b) on (0,1]^2, else 0",
       "(max{x^b + (xy)^b - 1, 0})^(1/b) on (0,1]^2, else 0",
       {TNormSpec::schweizer_sklar(0.5), TNormSpec::schweizer_sklar(1.0),
        TNormSpec::schweizer_sklar(2.0)}},
      {"product", "prod", "x*y", "x^2*y", {TNormSpec::product()}},
      {"schweizer-sklar (beta < 0)", "ss:<beta>", "(x^b + y^b - 1)^(1/b) on (0,1]^2, else 0",
       "(x^b + (xy)^b - 1)^(1/b) on (0,1]^2, else 0",
       {TNormSpec::schweizer_sklar(-0.5), TNormSpec::schweizer_sklar(-1.0),
        TNormSpec::schweizer_sklar(-2.0)}},
      {"c-shelf", "cshelf:<c>", "0 on (0,1)^2 \\ [c,1)^2, else min{x,y}",
       "0 if (x, xy) in (0,1)^2 \\ [c,1)^2, else x*y",
       {TNormSpec::cshelf(0.25), TNormSpec::cshelf(0.5), TNormSpec::cshelf(0.75)}},
      {"drastic", "drastic", "0 on [0,1)^2, else min{x,y}", "0 if x < 1, y if x = 1",
       {TNormSpec::drastic()}},
  };
}

}  // namespace tnormlab
