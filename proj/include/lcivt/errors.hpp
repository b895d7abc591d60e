#ifndef LCIVT_ERRORS_HPP
#define LCIVT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcivt
{

// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept { return "error"; }
};

// A precondition on the arguments does not hold.
class DomainError : public Error
{
public:
    using Error::Error;
    const char *kind() const noexcept override { return "domain"; }
};

// A comparison or sign cannot be decided from the terms below the cutoff.
class UndecidableError : public Error
{
public:
    using Error::Error;
    const char *kind() const noexcept override { return "undecidable"; }
};

// The valuation bound does not certify that the neglected tail lies beyond the cutoff.
class ConvergenceError : public Error
{
public:
    using Error::Error;
    const char *kind() const noexcept override { return "convergence"; }
};

// Configured term or iteration caps were exceeded.
class ResourceError : public Error
{
public:
    using Error::Error;
    const char *kind() const noexcept override { return "resource"; }
};

class ParseError : public Error
{
public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg), line_(line),
          column_(column)
    {
    }
    const char *kind() const noexcept override { return "parse"; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace lcivt

#endif
