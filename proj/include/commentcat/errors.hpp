#pragma once

#include <stdexcept>

namespace commentcat {

// Error taxonomy shared across the toolkit. Everything derives from
// std::runtime_error so callers can catch coarsely; the CLI maps these
// to exit codes and messages.

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file header does not match the declared column schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed content inside an otherwise readable file. Messages carry
// the offending row where applicable.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violations on operation inputs.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values encountered during optimization.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Corrupt, truncated, or version-mismatched model/config files.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace commentcat
