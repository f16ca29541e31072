#pragma once

#include <stdexcept>
#include <string>

namespace tensorrank {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid shape, mode, permutation or matrix dimensions.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Out-of-range or malformed index selection.
class SelectionError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

/// A decomposition failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Enumeration would exceed the configured size cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Tensor / model file could not be read, written or parsed.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed (e.g. a malformed TuckerModel).
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace tensorrank
