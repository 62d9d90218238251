#pragma once

#include <stdexcept>
#include <string>

namespace privaudit {

/// Input table or schema file does not describe the data it claims to.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A cell could not be parsed under its declared attribute kind.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller-supplied parameters violate an operation precondition.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structured refusal: the requested audit is outside the assumptions the
/// metric suite is valid for. Carries the policy rule id that triggered it.
class PolicyRefusal : public std::runtime_error {
public:
  PolicyRefusal(std::string rule_id, const std::string& msg)
      : std::runtime_error(msg), rule(std::move(rule_id)) {}
  std::string rule;
};

} // namespace privaudit
