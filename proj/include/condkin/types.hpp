#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace condkin {

using Scalar = double;
using Array = Eigen::ArrayXd;

// Configuration / input validation failure. `field` is the dotted key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& msg)
      : std::runtime_error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Requested dt violates the positivity bound; caller must shrink.
class StepSizeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checker precondition (e.g. barrier monotonicity) failed.
class PreconditionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace condkin
