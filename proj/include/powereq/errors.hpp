#pragma once

#include <stdexcept>
#include <string>

namespace powereq {

/// Broad failure classes. The CLI maps each one onto a stable exit code.
enum class ErrorKind {
  Validation,      // parameter or input outside its domain
  NoSolution,      // an inner equation has no root (k̂(μ), θ crossing, ...)
  NonConvergence,  // iteration budget exhausted
  Infeasible,      // solved, but the BGP cannot be sustained
  BlowUp,          // a transition path left the admissible region
  Schema,          // malformed config or CSV
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(ErrorKind::Validation, what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NoSolutionError : public Error {
 public:
  explicit NoSolutionError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double last_residual)
      : Error(ErrorKind::NonConvergence, what), residual_(last_residual) {}
  double last_residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised by the transition integrator when k̂ or ĉ leave the positive orthant
/// (or the labor market stops clearing) at some step.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, long step, double t)
      : Error(ErrorKind::BlowUp, what), step_(step), t_(t) {}
  long step() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  long step_;
  double t_;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, long line = -1)
      : Error(ErrorKind::Schema, line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace powereq
