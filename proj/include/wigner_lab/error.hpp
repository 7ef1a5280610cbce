#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wigner_lab {

enum class ErrorKind {
  invalid_argument,
  domain_coverage,
  numerical_consistency,
  degenerate_state,
  unreliable_domain,
  node_singularity,
  indeterminate_boundary,
  bracketing,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::domain_coverage: return "domain-coverage";
    case ErrorKind::numerical_consistency: return "numerical-consistency";
    case ErrorKind::degenerate_state: return "degenerate-state";
    case ErrorKind::unreliable_domain: return "unreliable-domain";
    case ErrorKind::node_singularity: return "node-singularity";
    case ErrorKind::indeterminate_boundary: return "indeterminate-boundary";
    case ErrorKind::bracketing: return "bracketing";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library. The kind is the
/// machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace wigner_lab
