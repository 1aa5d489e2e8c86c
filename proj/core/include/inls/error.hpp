#pragma once

#include <stdexcept>
#include <string>

namespace inls {

enum class ErrorKind { Validation, Solver, Io };

// Every failure raised by the library carries a kind (used for exit codes)
// and a short machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error validation_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::Validation, code, what);
}

inline Error solver_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::Solver, code, what);
}

inline Error io_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::Io, code, what);
}

}  // namespace inls
