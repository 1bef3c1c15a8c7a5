#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace solardry {

// Base for every error thrown by the engine. The CLI maps the direct
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the validity range of a correlation or table.
class RangeError : public Error {
public:
    using Error::Error;
};

// Invalid or inconsistent DryerConfig / sweep spec / economic inputs.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Thin-layer model evaluated where it is invalid (A1 <= 0, degenerate charge).
class KineticsError : public Error {
public:
    using Error::Error;
};

// Malformed or insufficient weather / observed data.
class InputError : public Error {
public:
    using Error::Error;
};

// Malformed CSV row or header. line() is 1-based; column() names the CSV
// column, empty when the problem is not tied to one.
class CsvError : public InputError {
public:
    CsvError(const std::string& what, std::size_t line, std::string column)
        : InputError(what), line_(line), column_(std::move(column)) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::string column_;
};

class MissingColumnError : public CsvError {
public:
    using CsvError::CsvError;
};

class NonNumericError : public CsvError {
public:
    using CsvError::CsvError;
};

// A parsed value outside its physical range (negative irradiance, rh > 100).
class InvariantViolationError : public CsvError {
public:
    using CsvError::CsvError;
};

class OrderingError : public CsvError {
public:
    using CsvError::CsvError;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t column, double pivot)
        : Error("singular matrix: pivot " + std::to_string(pivot) + " in column " +
                std::to_string(column)),
          column_(column) {}

    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

// Non-finite value or failed solve during time integration.
class NumericalError : public Error {
public:
    NumericalError(std::size_t step, const std::string& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Economic configuration with no positive annual net benefit.
class NoPaybackError : public Error {
public:
    using Error::Error;
};

}  // namespace solardry
