#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "tnormlab/errors.hpp"

namespace tnormlab {

/// A real number in the closed unit interval.
class UnitValue {
 public:
  constexpr UnitValue() noexcept = default;

  explicit UnitValue(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("value outside [0,1]: " + std::to_string(v), v, v);
    }
  }

  static constexpr UnitValue zero() noexcept { return UnitValue(Unchecked{}, 0.0); }
  static constexpr UnitValue one() noexcept { return UnitValue(Unchecked{}, 1.0); }

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

  friend constexpr bool operator==(UnitValue, UnitValue) noexcept = default;
  friend constexpr auto operator<=>(UnitValue, UnitValue) noexcept = default;

 private:
  struct Unchecked {};
  constexpr UnitValue(Unchecked, double v) noexcept : value_(v) {}

  double value_ = 0.0;
};

}  // namespace tnormlab
