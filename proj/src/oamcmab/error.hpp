#pragma once

#include <stdexcept>
#include <string>

namespace oamcmab {

enum class ErrorKind {
  Config,      // bad or unknown configuration field
  Domain,      // precondition violated (dimension mismatch, bad probabilities)
  Numeric,     // non-finite values encountered
  Degenerate,  // separation probability too small to sample from
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace oamcmab
