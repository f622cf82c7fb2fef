#pragma once

/**
 * @file errors.hpp
 * @brief Exception types thrown by the klp library.
 *
 * Every failure mode that a caller can provoke with bad data maps to a
 * distinct exception type, so tests and the CLI can match on the class
 * rather than parse message strings.
 */

#include <stdexcept>
#include <string>

namespace klp {

/// Base class for all klp errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Division by the zero scalar of a field.
class division_by_zero : public error {
public:
    explicit division_by_zero(const std::string& what = "division by zero")
        : error(what) {}
};

/// Two scalars (or containers of scalars) from different fields were combined.
class mixed_field_error : public error {
public:
    explicit mixed_field_error(const std::string& what = "operands belong to different fields")
        : error(what) {}
};

/// A parameter violated a precondition (infeasible N, p in {0,1}, bad modulus, ...).
class invalid_parameter : public error {
public:
    explicit invalid_parameter(const std::string& what) : error(what) {}
};

/// A matrix that must be invertible is singular.
class singular_matrix : public error {
public:
    explicit singular_matrix(const std::string& what = "matrix is singular")
        : error(what) {}
};

/// Malformed textual input (scalar strings, JSON payloads).
class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error(what) {}
};

} // namespace klp
