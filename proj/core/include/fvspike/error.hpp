#pragma once

#include <stdexcept>
#include <string>

namespace fvspike {

/// Base for every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad domain, zero cell count, q = 1 where excluded...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two objects that must agree in shape do not (field vs. mesh, matrix vs. rhs).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside its mathematical domain.
class MathDomainError : public Error {
public:
    using Error::Error;
};

}  // namespace fvspike
