// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <stdexcept>
#include <string>

namespace dnpi {

// Caller passed arguments outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent input files (CSV, schema, model documents).
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Seeing one of these is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dnpi
