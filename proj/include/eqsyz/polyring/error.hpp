#pragma once

#include <stdexcept>
#include <string>

namespace eqsyz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different polynomial rings.
class RingMismatch : public Error {
public:
    using Error::Error;
};

/// An input that must be homogeneous is not.
class NotHomogeneous : public Error {
public:
    using Error::Error;
};

/// Malformed input data (bad degrees, shapes, syntax, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition of an operation does not hold
/// (d^2 != 0, group closure too large, non-free coinvariant basis, ...).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// Depth of the zero module.
class UndefinedDepth : public Error {
public:
    UndefinedDepth() : Error("depth is undefined for the zero module") {}
};

} // namespace eqsyz
