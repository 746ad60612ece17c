#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coexpand {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// A primitive was evaluated outside its natural domain (log of a
/// non-positive number, division by an interval containing zero, ...).
class DomainViolation : public Error {
 public:
  DomainViolation(std::string primitive, double lo, double hi);

  const std::string& primitive() const noexcept { return primitive_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  std::string primitive_;
  double lo_;
  double hi_;
};

class DegenerateAffine : public Error {
 public:
  using Error::Error;
};

class DiagonalInput : public Error {
 public:
  using Error::Error;
};

class ValueCollision : public Error {
 public:
  using Error::Error;
};

class CriticalPoint : public Error {
 public:
  using Error::Error;
};

class SeamPoint : public Error {
 public:
  using Error::Error;
};

class PreconditionUnmet : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class GlueSide { Left, Right };

class NotGlueable : public Error {
 public:
  NotGlueable(GlueSide which, std::string reason);

  GlueSide which() const noexcept { return which_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  GlueSide which_;
  std::string reason_;
};

}  // namespace coexpand
