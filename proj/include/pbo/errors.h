#pragma once

#include <stdexcept>
#include <string>

namespace pbo {

// Bad physical input: non-positive mass, temperature too high for the
// oscillator model, empty particle set.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller broke a precondition of the API (wrong arity, width out of range).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Schema or value problems in user-supplied documents.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numeric or circuit check disagreed with its oracle.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Should be impossible by construction.
struct InconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pbo
