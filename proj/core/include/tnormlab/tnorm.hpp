#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tnormlab/dsl.hpp"
#include "tnormlab/unit_value.hpp"

namespace tnormlab {

class TNormSpec;

/// One summand <lower, upper, inner> of an ordinal sum.
struct Summand;

namespace family {

struct Minimum {};
struct Product {};
struct Lukasiewicz {};
struct Drastic {};

/// (max{x^b + y^b - 1, 0})^(1/b) for b > 0, (x^b + y^b - 1)^(1/b) for b < 0,
/// and 0 whenever an argument is 0.
struct SchweizerSklar {
  double beta;
};

/// 0 on (0,1)^2 \ [c,1)^2, min elsewhere.
struct CShelf {
  double c;
};

struct OrdinalSum {
  std::vector<Summand> summands;
};

/// User expression in x and y. With zero_guard set, any point with a zero
/// coordinate evaluates to 0 without touching the expression (every t-norm
/// satisfies T(0,y) = 0).
struct Expr {
  dsl::Expression expression;
  bool zero_guard;
};

}  // namespace family

enum class TNormKind {
  Minimum,
  Product,
  Lukasiewicz,
  Drastic,
  SchweizerSklar,
  CShelf,
  OrdinalSum,
  Expr,
};

enum class ZeroGuard { Off, On };

using TNormVariant = std::variant<family::Minimum, family::Product, family::Lukasiewicz,
                                  family::Drastic, family::SchweizerSklar, family::CShelf,
                                  family::OrdinalSum, family::Expr>;

/// Immutable, cheaply copyable description of a t-norm. Construction
/// validates parameters; evaluation never mutates.
class TNormSpec {
 public:
  /// Smallest |beta| accepted; the beta -> 0 limit is the Product kind.
  static constexpr double kMinAbsBeta = 1e-3;

  static TNormSpec minimum();
  static TNormSpec product();
  static TNormSpec lukasiewicz();
  static TNormSpec drastic();
  static TNormSpec schweizer_sklar(double beta);
  static TNormSpec cshelf(double c);
  /// Summands are sorted by lower bound; bounds may touch but not overlap.
  static TNormSpec ordinal_sum(std::vector<Summand> summands);
  static TNormSpec expr(dsl::Expression expression, ZeroGuard guard = ZeroGuard::Off);

  TNormKind kind() const noexcept;
  const TNormVariant& variant() const noexcept { return *data_; }

  /// Mini-syntax form, e.g. "ss:2" or "osum:[0,0.5,luk]".
  std::string to_string() const;

 private:
  explicit TNormSpec(TNormVariant v);
  std::shared_ptr<const TNormVariant> data_;
};

struct Summand {
  double lower;
  double upper;
  TNormSpec inner;
};

namespace companion {

/// The closed-form F paired with a catalog family.
struct Catalog {
  TNormSpec of;
};
/// F(x,y) := T(x, x*y).
struct Canonical {
  TNormSpec of;
};
struct Expr {
  dsl::Expression expression;
};

}  // namespace companion

using CompanionVariant = std::variant<companion::Catalog, companion::Canonical, companion::Expr>;

class CompanionF {
 public:
  /// Throws InvalidSpec for ordinal sums and expressions, which have no
  /// catalog companion.
  static CompanionF catalog(const TNormSpec& of);
  static CompanionF canonical(const TNormSpec& of);
  static CompanionF expr(dsl::Expression expression);

  const CompanionVariant& variant() const noexcept { return data_; }
  std::string to_string() const;

 private:
  explicit CompanionF(CompanionVariant v) : data_(std::move(v)) {}
  CompanionVariant data_;
};

bool has_catalog_companion(const TNormSpec& spec);

/// Result is commutative, bounded by min(x,y), and T(x,1) = x exactly for the
/// catalog kinds. Throws DomainError when an Expr leaves [0,1].
UnitValue eval_tnorm(const TNormSpec& spec, UnitValue x, UnitValue y);

UnitValue eval_companion(const CompanionF& f, UnitValue x, UnitValue y);

UnitValue diagonal(const TNormSpec& spec, UnitValue x);

/// x^(1) = x, x^(n) = T(x, x^(n-1)). Throws InvalidSpec for n < 1.
UnitValue t_power(const TNormSpec& spec, UnitValue x, int n);

/// sup{z : T(z,z) <= y} by bisection to absolute accuracy tol. Requires a
/// monotone diagonal; a sampled decrease raises StructuralError.
UnitValue diagonal_pseudo_inverse(const TNormSpec& spec, UnitValue y, double tol);

/// Values within this distance outside [0,1] are clamped; farther is an error.
inline constexpr double kClampSlack = 1e-9;

/// Clamp-or-throw used by every formula that can drift past the boundary.
double to_unit_checked(double raw, double x, double y, const char* what);

struct FamilyEntry {
  std::string name;
  std::string syntax;
  std::string t_formula;
  std::string f_formula;
  std::vector<TNormSpec> examples;
};

/// The six catalog families, in catalog order.
std::vector<FamilyEntry> family_catalog();

}  // namespace tnormlab
