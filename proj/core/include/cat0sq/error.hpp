#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cat0sq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `location` is a JSON-pointer-like path or a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Precondition violated by the caller (unknown id, zero vector, mismatched complexes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A link contains a simple loop shorter than 2*pi.
class CurvatureError : public Error {
 public:
  CurvatureError(std::string vertex, std::vector<std::string> loop, const std::string& message)
      : Error(message), vertex_(std::move(vertex)), loop_(std::move(loop)) {}
  const std::string& vertex() const noexcept { return vertex_; }
  const std::vector<std::string>& loop() const noexcept { return loop_; }

 private:
  std::string vertex_;
  std::vector<std::string> loop_;
};

/// The developed ball does not reach far enough to answer the query soundly.
class BallTooSmall : public Error {
 public:
  explicit BallTooSmall(const std::string& message, int achieved = -1)
      : Error("ball too small: " + message), achieved_(achieved) {}
  int achieved() const noexcept { return achieved_; }

 private:
  int achieved_;
};

/// An iterative procedure ran out of its repair budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, double deficit) : Error(message), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

}  // namespace cat0sq
