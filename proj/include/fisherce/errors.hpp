#pragma once

#include <stdexcept>
#include <string>

namespace fisherce {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad file, schema violation, non-monotone preference,
// non-positive budget, shape mismatch.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

class InvalidBundle : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

// A constructive solver was called outside its hypotheses (genericity,
// preference class, market shape). The message names the failed condition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// An enumeration would exceed the configured bound.
class ResourceLimit : public Error {
  public:
    using Error::Error;
};

// A construction produced an output that failed re-verification.
class SolverBug : public Error {
  public:
    using Error::Error;
};

} // namespace fisherce
