#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridnet {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data violates a structural rule (unknown endpoint, negative length, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A text or JSON source could not be parsed. Carries the 1-based line number
/// (0 when the location is not line-oriented) and the offending field name.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::string field = {})
        : Error(what), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Operation requires a connected graph; caller should split components first.
class DisconnectedError : public Error {
public:
    explicit DisconnectedError(const std::string& what) : Error(what) {}
};

/// Requested construction is impossible (e.g. fewer edges than a spanning tree).
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// An iterative solver ran out of iterations. Carries the last residual seen.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

} // namespace gridnet
