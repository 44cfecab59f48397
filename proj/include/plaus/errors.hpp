#pragma once

#include <stdexcept>
#include <string>

namespace plaus {

// Base of every error the library raises. `kind()` is a stable short tag used
// in machine-parsable CLI error lines.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Input outside an operation's mathematical domain (m <= 2 for density, even m
// for Fermat, forecast outside [0,1], ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain", message) {}
};

// A decoder refused a bit string.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& decoder, const std::string& message)
      : Error("decode", decoder + ": " + message), decoder_(decoder) {}
  const std::string& decoder() const noexcept { return decoder_; }

 private:
  std::string decoder_;
};

// A desk-scale guard tripped: length over a feasible/enumerable bound, not
// enough pi digits, a forecaster exceeding its declared budget.
class ResourceGuardError : public Error {
 public:
  explicit ResourceGuardError(const std::string& message)
      : Error("resource-guard", message) {}
};

// An unknown problem/ensemble/forecaster/rule/buyer identifier.
class UnknownNameError : public Error {
 public:
  UnknownNameError(const std::string& category, const std::string& name)
      : Error("unknown-name", "unknown " + category + " '" + name + "'"),
        name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Log score of a certain forecast that turned out wrong.
class InfiniteScoreError : public Error {
 public:
  explicit InfiniteScoreError(const std::string& message)
      : Error("infinite-score", message) {}
};

// A buyer position list broke one of its caps.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& cap, const std::string& message)
      : Error("constraint", cap + ": " + message), cap_(cap) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

// Malformed parameters, mismatched modes, empty inputs.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid-argument", message) {}
};

}  // namespace plaus
