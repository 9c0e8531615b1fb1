#pragma once

#include <stdexcept>
#include <string>

namespace pv {

inline constexpr const char* kVersion = "0.1.0";

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live in different polynomial spaces, or a point has the wrong length.
class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// An operation that needs a nonzero polynomial received the zero polynomial.
class ZeroPolynomial : public Error {
public:
  explicit ZeroPolynomial(const std::string& msg) : Error(msg) {}
};

// An argument is outside the domain of the operation (bad degree, sigma <= 0, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A linear system that should be positive definite was numerically rank deficient.
class RankDeficient : public Error {
public:
  explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

// Subdivision hit the depth cap with failing cubes left in the queue.
class MaxDepthExceeded : public Error {
public:
  MaxDepthExceeded(const std::string& msg, int depth) : Error(msg), depth(depth) {}
  int depth;
};

}  // namespace pv
