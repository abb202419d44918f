#pragma once

#include <stdexcept>
#include <string>

namespace nckit {

// Every failure the library can report deliberately.  The kind is machine
// readable so the CLI can map it to an exit status and a stable message.
enum class ErrorKind {
  BadInput,          // malformed job, parse error, invalid parameters
  FieldMismatch,     // scalars from incompatible cyclotomic fields
  Truncation,        // a computation ran past its degree bound
  Budget,            // completion / enumeration exceeded a resource cap
  NotAutomorphism,   // a matrix fails to preserve the defining relations
  Degenerate,        // a request is meaningless for the given data
  Inconsistent,      // two independent computations disagree (internal check)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace nckit
