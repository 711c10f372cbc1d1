#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stargebra {

using Complex = std::complex<double>;

/// Dense square complex matrix; the carrier for algebra elements and operators.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  Parse,         // malformed input (files, JSON, group tables)
  Precondition,  // an operation's documented precondition does not hold
  Numerical,     // a postcondition residual exceeded its tolerance
};

/// Every failure carries the kind and the precondition or invariant it names,
/// e.g. Error(ErrorKind::Precondition, "resolve_normal", "input is not normal").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), kind_(kind), where_(std::move(where)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

[[noreturn]] inline void fail_precondition(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Precondition, where, what);
}

[[noreturn]] inline void fail_numerical(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Numerical, where, what);
}

}  // namespace stargebra
