#pragma once

#include <stdexcept>
#include <string>

namespace ranklab {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// Matrix or state dimensions do not fit together.
class ShapeError : public ContractError {
public:
    using ContractError::ContractError;
};

// Malformed text input (state, inequality, cone or support files).
class ParseError : public Error {
public:
    using Error::Error;
};

// Request outside what the library supports (e.g. known_set for n != 4).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// A search or enumeration would exceed its configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// An internal invariant failed. Always a bug or an exhausted retry budget,
// never a property of the input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ranklab
