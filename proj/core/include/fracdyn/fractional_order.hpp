#pragma once

#include "fracdyn/errors.hpp"

#include <string>

namespace fracdyn {

/// Order of the time derivative, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }
  bool is_integer_order() const noexcept { return value_ == 1.0; }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double value_;
};

}  // namespace fracdyn
