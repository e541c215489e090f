#pragma once

#include <stdexcept>
#include <string>

namespace bdbgeo {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A coordinate lies outside the declared domain of a field or map.
struct DomainError : Error {
    using Error::Error;
};

// Evaluation requested at (or across) a pole / zero-amplitude surface.
struct SingularPointError : Error {
    SingularPointError(const std::string& what, double where)
        : Error(what), location(where) {}
    double location;
};

// A stated precondition does not hold (bad argument combination).
struct PreconditionError : Error {
    using Error::Error;
};

// A parameter set makes the requested construction collapse (e.g. M = 0).
struct DegenerateParameterError : Error {
    using Error::Error;
};

// A quadrature or series could not reach the requested accuracy.
struct AccuracyError : Error {
    AccuracyError(const std::string& what, double tail)
        : Error(what), tail_estimate(tail) {}
    double tail_estimate;
};

// Too many grid points had to be skipped for a residual check to be meaningful.
struct CoverageError : Error {
    using Error::Error;
};

} // namespace bdbgeo
