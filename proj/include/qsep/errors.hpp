// errors.hpp
// Exception hierarchy shared by every qsep module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsep {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad caller-supplied argument (ranges, lengths, subsets).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A precondition on the *shape* of the data was violated (wrong basis tag,
// non-Hermitian input to the eigensolver).
class ContractError : public Error {
public:
    using Error::Error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

enum class Invariant { dimension, hermitian, trace, psd };

inline const char* to_string(Invariant inv) {
    switch (inv) {
        case Invariant::dimension: return "dimension";
        case Invariant::hermitian: return "hermitian";
        case Invariant::trace: return "trace";
        case Invariant::psd: return "psd";
    }
    return "?";
}

// A matrix failed density validation. Carries which invariant broke and,
// where it makes sense, the offending entry.
class ValidationError : public Error {
public:
    ValidationError(Invariant inv, const std::string& what, std::size_t row = 0, std::size_t col = 0)
        : Error(std::string("density validation failed (") + to_string(inv) + "): " + what),
          invariant_(inv), row_(row), col_(col) {}

    Invariant invariant() const noexcept { return invariant_; }
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    Invariant invariant_;
    std::size_t row_;
    std::size_t col_;
};

// A certificate was requested for a state outside the construction's range.
class NotCertifiableError : public Error {
public:
    NotCertifiableError(const std::string& what, double value)
        : Error(what), value_(value) {}

    // The offending quantity (spin norm or mixing weight).
    double value() const noexcept { return value_; }

private:
    double value_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace qsep
