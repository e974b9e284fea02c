#pragma once

#include <stdexcept>
#include <string>

namespace flowcat {

enum class ErrorKind {
  InvalidArgument,  // precondition violated by the caller
  UnknownVertex,
  UnknownEdge,
  Unsupported,      // e.g. infinite bundles where only finite graphs are allowed
  NoCoproduct,      // bounded category has no coproduct for the family
  IllTyped,         // morphism source/target mismatch
  CapExceeded,      // search node cap hit
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flowcat
