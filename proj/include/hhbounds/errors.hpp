#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace hhb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate or non-finite domain, point outside its interval, bad grid size.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented hypothesis does not hold (e.g. positivity, n >= 1).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A function evaluation produced a non-finite value.
///
/// `x` and `y` hold the evaluation point (`y` is NaN for univariate
/// functions). When the function came from an expression, `expr_begin` and
/// `expr_end` delimit the failing subexpression in the source text.
class EvaluationError : public Error {
 public:
  static constexpr double kNoCoordinate = std::numeric_limits<double>::quiet_NaN();
  static constexpr std::size_t kNoSpan = static_cast<std::size_t>(-1);

  EvaluationError(const std::string& what, double x, double y = kNoCoordinate,
                  std::size_t expr_begin = kNoSpan, std::size_t expr_end = kNoSpan)
      : Error(what), x_(x), y_(y), expr_begin_(expr_begin), expr_end_(expr_end) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  std::size_t expr_begin() const noexcept { return expr_begin_; }
  std::size_t expr_end() const noexcept { return expr_end_; }

 private:
  double x_;
  double y_;
  std::size_t expr_begin_;
  std::size_t expr_end_;
};

}  // namespace hhb
