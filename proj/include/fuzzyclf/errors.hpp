#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyclf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (alpha outside (0,1],
/// beta outside [0,1], negative spread, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A defuzzifier was asked to handle a feature kind it does not support.
class UnsupportedKindError : public Error {
public:
    using Error::Error;
};

/// Feature vectors or datasets that do not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A matrix that is not symmetric positive semidefinite where one is required.
class MatrixError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(format(what, row, column)), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t row, std::size_t column) {
        std::string out;
        if (row > 0) out += "row " + std::to_string(row);
        if (column > 0) out += (out.empty() ? "" : ", ") + std::string("column ") + std::to_string(column);
        return out.empty() ? what : out + ": " + what;
    }

    std::size_t row_;
    std::size_t column_;
};

/// A train/validation/test split would leave one partition empty.
class PartitionError : public Error {
public:
    using Error::Error;
};

/// The SMO solver stopped with KKT violations above tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A non-finite value appeared during a numeric computation.
class NumericError : public Error {
public:
    NumericError(const std::string& what, int where)
        : Error(what + " (at " + std::to_string(where) + ")"), where_(where) {}

    /// Layer index for forward passes, epoch index for training.
    int where() const noexcept { return where_; }

private:
    int where_;
};

}  // namespace fuzzyclf
