#pragma once

#include <stdexcept>
#include <string>

namespace gf2r {

// Base of all library errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (bad dimensions, bad arity, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A count or a search exceeded its configured budget; results are Unknown.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Arithmetic result does not fit the native count type.
class Overflow : public Error {
public:
    using Error::Error;
};

// Subspace handed to a coloring is not a copy of the coloring's pattern.
class InvalidCopy : public Error {
public:
    using Error::Error;
};

class NoSuchTriple : public Error {
public:
    using Error::Error;
};

class RadicalNotALine : public InvalidCopy {
public:
    using InvalidCopy::InvalidCopy;
};

class NotInAnyFamily : public Error {
public:
    using Error::Error;
};

class ZeroProjection : public Error {
public:
    using Error::Error;
};

class DegenerateSpace : public Error {
public:
    using Error::Error;
};

class NotAnIsometry : public Error {
public:
    using Error::Error;
};

// The finite truncation of the ambient space cannot host a constructed object.
class TruncationTooSmall : public Error {
public:
    using Error::Error;
};

// Malformed configuration or input document.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gf2r
