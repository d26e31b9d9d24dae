#pragma once

#include <stdexcept>
#include <string>

namespace gsdyn {

// Argument outside the mathematical domain of an operation (negative t, mu = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input violates a theorem hypothesis that an operation relies on.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested case is not supported (odd degree where even is required, ...).
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Symbolic degree would exceed the configured cap.
class DegreeCapError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Numerical procedure failed to converge or certify its result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace gsdyn
