#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slicer {

enum class ErrorKind {
  invalid_argument,  // bad parameter or malformed input data
  parse,             // unreadable JSON / file contents
  validation,        // scenario violates its invariants
  infeasible,        // no deployment can satisfy the constraints
  io,                // filesystem failure
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

[[noreturn]] inline void raise_invalid(const std::string& msg) {
  throw Error(ErrorKind::invalid_argument, msg);
}

}  // namespace slicer
