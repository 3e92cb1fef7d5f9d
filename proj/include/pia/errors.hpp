#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pia {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coefficient returned a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// The assembled system broke the M-matrix contract (zero or negative pivot).
class AssemblyError : public Error {
public:
    using Error::Error;
};

/// A point or policy lies outside the admissible set.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input: bad configuration values, inconsistent grids.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Expression or problem-file syntax error; `position()` is a 0-based offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace pia
