#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace epsilite {

struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  SourceLocation location;

  // "file:line:col: error: message"
  std::string to_string() const;
};

/// Thrown by the parsers when the input is rejected. Always carries at least
/// one diagnostic.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(std::vector<Diagnostic> diagnostics);
  explicit DiagnosticError(Diagnostic diagnostic);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Base for errors raised by the model runtime (conformance, access, lookup).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AccessViolation : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Error raised while executing a script; the location is the expression or
/// statement that failed.
class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(std::string message, SourceLocation location, bool access_violation = false);

  const std::string& message() const noexcept { return message_; }
  const SourceLocation& location() const noexcept { return location_; }
  /// The failure was a write attempted on a read-only model.
  bool is_access_violation() const noexcept { return access_violation_; }

 private:
  std::string message_;
  SourceLocation location_;
  bool access_violation_ = false;
};

}  // namespace epsilite
