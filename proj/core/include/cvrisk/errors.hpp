#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cvrisk/calendar.hpp"

namespace cvrisk {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative sigma,
/// undefined CV, |rho| > 1, invalid range...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to reach the requested accuracy.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// Not enough observations to compute the requested quantity.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A monthly series has a hole where a calendar month was required.
class GapError : public Error {
public:
    explicit GapError(YearMonth missing);

    YearMonth missing() const noexcept { return missing_; }

private:
    YearMonth missing_;
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input parsed but violates a table-level invariant (duplicate keys).
class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace cvrisk
