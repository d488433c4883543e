#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace entrolab {

// Error taxonomy. The CLI maps each class onto a fixed exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or unknown name; exit code 2.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A value violates a domain invariant (negative probability, non-Hermitian
/// matrix, ...). Carries the invariant name and the size of the violation.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, double magnitude, const std::string& what)
      : Error(what), invariant_(std::move(invariant)), magnitude_(magnitude) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::string invariant_;
  double magnitude_;
};

/// Shapes of two operands do not fit together; exit code 4.
class DimensionError : public Error {
 public:
  using Error::Error;
};

enum class LogBase { bits, nats };

inline constexpr double kLn2 = std::numbers::ln2;

/// Converts a quantity measured in nats into `base`.
inline double from_nats(double nats, LogBase base) {
  return base == LogBase::bits ? nats / kLn2 : nats;
}

inline const char* unit_name(LogBase base) {
  return base == LogBase::bits ? "bits" : "nats";
}

/// -x log x in nats with the 0 log 0 = 0 convention.
inline double neg_x_log_x(double x) {
  return x > 0.0 ? -x * std::log(x) : 0.0;
}

/// A real number or +infinity. Infinity is an explicit state, never a
/// sentinel float.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v); }
  static ExtendedReal infinity() { return ExtendedReal(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  /// Throws std::logic_error on +infinity.
  double value() const {
    if (!value_) throw std::logic_error("ExtendedReal: value() on +infinity");
    return *value_;
  }

  /// IEEE view for arithmetic comparisons in checks.
  double as_double() const noexcept {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
  }

  ExtendedReal scaled(double factor) const {
    return value_ ? ExtendedReal(*value_ * factor) : ExtendedReal();
  }

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  ExtendedReal() = default;
  explicit ExtendedReal(double v) : value_(v) {}

  std::optional<double> value_;
};

}  // namespace entrolab
