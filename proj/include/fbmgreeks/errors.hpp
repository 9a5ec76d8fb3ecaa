#pragma once

#include <stdexcept>
#include <string>

namespace fbmgreeks {

enum class ErrorCategory { config, domain, numerical, io };

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::numerical: return "numerical";
    case ErrorCategory::io: return "io";
  }
  return "unknown";
}

/// Base of every error raised by the library; carries a category used by the
/// CLI to pick an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(ErrorCategory::config,
              line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  /// 1-based line of the offending input, 0 when not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, long index = -1)
      : Error(ErrorCategory::numerical, what), index_(index) {}

  /// Step, pivot or path index at which the failure occurred (-1 if none).
  long index() const noexcept { return index_; }

 private:
  long index_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace fbmgreeks
