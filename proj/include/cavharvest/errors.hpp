#pragma once

#include <stdexcept>
#include <string>

namespace cavharvest {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: asymmetric matrices, bad indices, bad configs.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Shapes that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Arguments outside the mathematical domain of a function
/// (unphysical symplectic eigenvalues, r = 0 in a 1/r formula, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical routine produced a result that fails its own consistency check.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// File-system failures; the message always names the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cavharvest
