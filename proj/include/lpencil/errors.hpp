#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpencil {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax errors, unknown identifiers and undeclared variables.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

/// Evaluation left the domain of an operator (division by zero, sqrt of a
/// negative number, ...). `node()` is the canonical text of the offending node.
class DomainError : public Error {
 public:
  DomainError(const std::string& node, const std::string& reason)
      : Error("domain error in '" + node + "': " + reason), node_(node) {}

  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

class NullVectorError : public Error {
 public:
  using Error::Error;
};

class CurveError : public Error {
 public:
  enum class Reason { NotUnitSpeed, NullTangent, VanishingCurvature, MixedCausalType, KindMismatch };

  CurveError(Reason reason, const std::string& message) : Error(message), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// The two surface partials are (numerically) parallel or vanish.
class DegenerateNormalError : public Error {
 public:
  using Error::Error;
};

/// A pencil specification violates one of its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Configuration document rejected; `pointer()` is a JSON pointer to the
/// offending value.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& pointer, const std::string& message)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace lpencil
