#pragma once

#include <stdexcept>
#include <string>

namespace hardy_means {

/// Base of every error thrown by the library. The CLI maps subclasses onto
/// exit codes (validation 2, solver/consistency 3, I/O 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An evaluation point or datum outside (0, inf).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed arguments: unsorted grids, a >= b, n < 2, and similar.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A generator still carries "estimate" for a limit the operation needs.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A limit estimate contradicts the class conditions (e.g. g_+(0) > -1).
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// An operation was called on an input outside its documented class.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A bracketed root search could not find or refine a sign change.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hardy_means
