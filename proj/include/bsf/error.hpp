#pragma once

#include <stdexcept>
#include <string>

namespace bsf {

/// Failure categories; the CLI maps each onto a process exit code.
enum class ErrorKind {
  Validation,  // malformed input or violated precondition
  Infeasible,  // a well-formed question with a negative answer
  Io,          // file system / parse failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) {
  return Error(ErrorKind::Validation, what);
}

inline Error io_error(const std::string& what) {
  return Error(ErrorKind::Io, what);
}

}  // namespace bsf
