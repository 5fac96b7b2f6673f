#include "epsilite/diagnostic.hpp"

namespace epsilite {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string text;
  for (const auto& d : diagnostics) {
    if (!text.empty()) text += '\n';
    text += d.to_string();
  }
  return text;
}

}  // namespace

std::string SourceLocation::to_string() const {
  std::string prefix = file.empty() ? std::string("<input>") : file;
  return prefix + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::string Diagnostic::to_string() const {
  return location.to_string() + (severity == Severity::error ? ": error: " : ": warning: ") +
         message;
}

DiagnosticError::DiagnosticError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

DiagnosticError::DiagnosticError(Diagnostic diagnostic)
    : DiagnosticError(std::vector<Diagnostic>{std::move(diagnostic)}) {}

RuntimeError::RuntimeError(std::string message, SourceLocation location, bool access_violation)
    : std::runtime_error(location.to_string() + ": " + message),
      message_(std::move(message)),
      location_(std::move(location)),
      access_violation_(access_violation) {}

}  // namespace epsilite
