#pragma once

// Error taxonomy shared across the library.
//
// Every failure carries a stable machine-readable code so that callers (and
// the CLI, which maps error kinds to exit codes) never have to parse prose.
// Domain errors describe inputs that are structurally or numerically outside
// an operation's contract; io errors describe unreadable or malformed
// documents.

#include <stdexcept>
#include <string>
#include <utility>

namespace psih {

enum class ErrorKind { domain, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& code() const noexcept { return code_; }

  [[noreturn]] static void domain(std::string code, const std::string& message) {
    throw Error(ErrorKind::domain, std::move(code), message);
  }
  [[noreturn]] static void io(std::string code, const std::string& message) {
    throw Error(ErrorKind::io, std::move(code), message);
  }

 private:
  ErrorKind kind_;
  std::string code_;
};

}  // namespace psih
