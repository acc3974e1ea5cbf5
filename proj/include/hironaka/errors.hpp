#pragma once

#include <stdexcept>
#include <string>

namespace hironaka {

// Base of everything the library throws on bad input or impossible geometry.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

// Two branches that agree as far as we can see.
struct IdenticalBranch : InputError {
    using InputError::InputError;
};

// Coefficients beyond the known precision would be needed.
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct NotContractible : Error {
    using Error::Error;
};

struct GeometryViolation : Error {
    using Error::Error;
};

// An internal consistency check failed (non-integral solve, bad gluing).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace hironaka
