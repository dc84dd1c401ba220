#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellsheaf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input to an operation: unknown element, dimension mismatch, a set
/// that is not open, an enumeration bound that was exceeded.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Restriction maps along two chains p <= ... <= r compose differently.
class FunctorialityError : public Error {
public:
    FunctorialityError(std::string lower, std::string upper, std::string detail)
        : Error("restriction maps are path-dependent between '" + lower + "' and '" + upper +
                "': " + detail),
          lower_(std::move(lower)), upper_(std::move(upper)) {}

    const std::string& lower() const noexcept { return lower_; }
    const std::string& upper() const noexcept { return upper_; }

private:
    std::string lower_;
    std::string upper_;
};

/// A morphism component fails to commute with the restriction maps.
class NaturalityError : public Error {
public:
    NaturalityError(std::string lower, std::string upper, std::string detail)
        : Error("naturality fails on '" + lower + "' <= '" + upper + "': " + detail),
          lower_(std::move(lower)), upper_(std::move(upper)) {}

    const std::string& lower() const noexcept { return lower_; }
    const std::string& upper() const noexcept { return upper_; }

private:
    std::string lower_;
    std::string upper_;
};

/// Local sections disagree on an overlap.
class GluingError : public Error {
public:
    GluingError(std::string element, std::string detail)
        : Error("local sections disagree at '" + element + "': " + detail),
          element_(std::move(element)) {}

    const std::string& element() const noexcept { return element_; }

private:
    std::string element_;
};

/// Syntax or schema error in a sheaf document, with a 1-based location.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace cellsheaf
