#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heegcone {

/// Machine-readable failure categories. The CLI maps these to exit codes.
enum class ErrorCode {
  invalid_argument,
  degenerate_lattice,
  budget_exceeded,
  parity_unsupported,
  invalid_index,
  non_positive_index,
  coverage,
  relation_failed,
  parse,
  check_failed,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define HEEGCONE_REQUIRE(cond, code, msg)            \
  do {                                              \
    if (!(cond)) throw ::heegcone::Error((code), (msg)); \
  } while (0)

}  // namespace heegcone
