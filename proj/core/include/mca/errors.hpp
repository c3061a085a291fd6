#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance text. Carries the 1-based line number of the offending record.
class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string & message) :
        Error("line " + std::to_string(line) + ": " + message),
        _line(line)
    {
    }

    [[nodiscard]] auto line() const noexcept -> std::size_t { return _line; }

private:
    std::size_t _line;
};

/// Structurally or semantically invalid instance (cyclic G or H, dangling ids, ...).
class InstanceError : public Error
{
public:
    using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// A practical size guard (vertex count, colors, nhs, lc, width) was exceeded.
class GuardExceeded : public Error
{
public:
    using Error::Error;
};

/// A solver ran past its wall-clock deadline.
class Timeout : public Error
{
public:
    using Error::Error;
};

/// A runtime consistency check failed. Always a bug in this library.
class InternalError : public Error
{
public:
    using Error::Error;
};

}
