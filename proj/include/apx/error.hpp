#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apx {

enum class ErrorKind {
  invalid_descriptor,
  syntax,
  cross_ring,
  infinite_ring,
  not_an_ideal,
  not_symmetric,
  uncoverable,
  budget_exceeded,
  verification_failed,
  zero_divisor_found,
  precondition,
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(ErrorKind::syntax,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Process exit code contract shared by every CLI subcommand:
// 0 ok, 1 internal, 2 precondition, 3 budget, 4 invariant violation.
int exit_code_for(ErrorKind kind);

}  // namespace apx
