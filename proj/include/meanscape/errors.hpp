#pragma once

#include <stdexcept>
#include <string>

namespace meanscape {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside a declared domain, or mismatched domains between operands.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A function handed in as a mean violates the mean axioms at the point of use.
class InvalidMeanError : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold (e.g. a solver needs a monotone mean).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not produce a result (no bracket, no convergence).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

} // namespace meanscape
