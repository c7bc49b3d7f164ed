// Error types shared across the toolkit.
#pragma once

#include <stdexcept>
#include <string>

namespace hamflow {

// Failure categories. The CLI maps them onto distinct exit codes.
enum class ErrorKind {
    domain,      // bad parameters, states outside a chart/scheme domain
    capability,  // the requested computation is not available for this input
    numerical,   // a numeric kernel failed to reach its tolerance
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::domain, what); }
inline Error capability_error(const std::string& what) { return Error(ErrorKind::capability, what); }
inline Error numerical_error(const std::string& what) { return Error(ErrorKind::numerical, what); }

}  // namespace hamflow
