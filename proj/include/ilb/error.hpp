#pragma once

#include <stdexcept>
#include <string>

namespace ilb {

// Single error type for the whole library; the kind drives CLI exit codes
// (Parse/Validation/Io/Usage/Resource all map to exit code 2).
class Error : public std::runtime_error {
public:
  enum class Kind { Parse, Validation, Precondition, Resource, Io, Usage };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

}  // namespace ilb
