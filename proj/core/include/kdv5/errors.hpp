#ifndef KDV5_ERRORS_HPP
#define KDV5_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdv5 {

/// Base class of everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Expression-source syntax error. `offset` is the byte position in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Numeric evaluation left the real domain (log of nonpositive, sqrt of
/// negative, division by zero, ...). Carries the offending subexpression text.
class EvalError : public Error {
 public:
  EvalError(const std::string& what, std::string subexpression)
      : Error(what + " in `" + subexpression + "`"), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// A type invariant failed at construction (vanishing coefficient, bad domain, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A point transformation could not be built or applied (radical-sign
/// violation, non-monotone time map, inversion failure).
class TransformError : public Error {
 public:
  using Error::Error;
};

}  // namespace kdv5

#endif  // KDV5_ERRORS_HPP
