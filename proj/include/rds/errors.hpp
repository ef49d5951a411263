#pragma once

#include <stdexcept>
#include <string>

namespace rds {

/// Violated precondition of a public operation (bad sizes, bad arguments).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or unreadable scenario / sweep configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested conserved quantities admit no nonnegative state (|m2| > m1).
class InfeasibleInvariants : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A ratio was requested for an input that makes its denominator vanish.
class DivisionDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The RK4 oracle produced a negative concentration; retry with a smaller step.
class OracleStepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The positivity limiter asked for a step below dt_min.
class DtUnderflow : public std::runtime_error {
 public:
  DtUnderflow(double t, double dt_required)
      : std::runtime_error("time step underflow at t=" + std::to_string(t) +
                           " (required dt=" + std::to_string(dt_required) + ")"),
        t_(t),
        dt_required_(dt_required) {}

  double t() const noexcept { return t_; }
  double dt_required() const noexcept { return dt_required_; }

 private:
  double t_;
  double dt_required_;
};

}  // namespace rds
