#pragma once

#include <stdexcept>
#include <string>

namespace bss {

// Base class for all library-specific failures. Precondition violations that a
// caller could have checked statically (dimension mismatches, empty inputs,
// bad configuration) throw std::invalid_argument instead; non-finite scalar
// inputs throw std::domain_error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data is numerically unusable: rank-deficient covariance, a constant
// (zero-variance) channel, etc. The message names the offending index.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Gram-Schmidt deflation left a residual with norm at or below the cutoff;
// the caller should retry with a fresh random vector.
class DegenerateProjectionError : public Error {
public:
    using Error::Error;
};

// A component extraction exhausted its re-randomization budget.
class ExtractionError : public Error {
public:
    using Error::Error;
};

// Random matrix generation failed to find an acceptable candidate.
class GenerationError : public Error {
public:
    using Error::Error;
};

// File cannot be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

// File exists but its contents are not in the supported format. The message
// names the offending header field or cell location.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace bss
