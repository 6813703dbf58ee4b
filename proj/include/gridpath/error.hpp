#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridpath {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }
    const char* kind() const noexcept override { return "parse_error"; }

private:
    std::size_t line_;
};

class OverflowError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "overflow_error"; }
};

class KindMismatch : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "kind_mismatch"; }
};

class FormatError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "format_error"; }
};

class RangeError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "range_error"; }
};

class DimensionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "dimension_error"; }
};

class NoPathError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "no_path"; }
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "contract_violation"; }
};

}  // namespace gridpath
