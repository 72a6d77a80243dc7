// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_ERRORS_HPP
#define REGVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace regvar {

/// Argument outside the domain of an operation (group membership, log of a
/// nonpositive number, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact singular point (eta vanishes, kernel not invertible, ...).
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// A FunctionSpec could not be evaluated at the requested point.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration (unknown key, bad value, parse failure).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Pipeline-level failures that map to distinct CLI exit statuses.
enum class FailureClass {
  none = 0,
  config = 2,
  non_convergent = 3,
  trivial_kernel = 4,
  empty_anchors = 5,
  data = 6,
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(FailureClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  FailureClass failure_class() const { return cls_; }

 private:
  FailureClass cls_;
};

}  // namespace regvar

#endif  // REGVAR_ERRORS_HPP
