#pragma once

#include <stdexcept>
#include <string>

namespace ellgraph {

enum class ErrorKind {
  parse,
  unknown_symbol,
  alphabet_mismatch,
  invalid_argument,
  trivial_word,
  not_a_basis,
  does_not_generate,
  rank_mismatch,
  unverified_splitting,
  trivial_intersection,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ellgraph
