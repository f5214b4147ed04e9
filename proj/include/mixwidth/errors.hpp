#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixwidth {

/// Parameter outside the domain of a formula or operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a memory/precision cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A SigmaPrefix is too short for the requested width; `required()` is the
/// smallest prefix length known to be necessary (a lower bound, not a
/// guarantee of sufficiency when the sup-over-h certificate did not fire).
class PrefixTooShort : public ResourceError {
 public:
  PrefixTooShort(const std::string& what, std::size_t required)
      : ResourceError(what + " (need N >= " + std::to_string(required) + ")"),
        required_(required) {}

  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

}  // namespace mixwidth
