#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

// Argument errors use std::invalid_argument and domain errors std::domain_error.
// The types below cover the remaining failure kinds surfaced through the C API.

/// A configured budget (points, iterations, degree) was exceeded. `partial`
/// carries whatever certificate was assembled before giving up, as JSON text.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::string partial = "{}")
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::string& partial() const noexcept { return partial_; }

 private:
  std::string partial_;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace orbitlab
