#pragma once

#include <stdexcept>
#include <string>

namespace harnack {

enum class ErrorKind { invalid_input, not_a_contraction, numerical_failure };

// Every failure raised by the library carries one of the three kinds; the CLI
// maps them onto exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_input, what);
}

[[noreturn]] inline void fail_numerical(const std::string& what) {
  throw Error(ErrorKind::numerical_failure, what);
}

const char* to_string(ErrorKind kind) noexcept;

} // namespace harnack
