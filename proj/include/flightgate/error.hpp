#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flightgate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax or directive error in rule-base or query text.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column, std::string token);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& token() const { return token_; }
    /// Message without the location prefix.
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
    std::string token_;
};

class ProgramError : public Error {
public:
    using Error::Error;
};

/// Query mentions an atom the program does not know.
class QueryError : public Error {
public:
    using Error::Error;
};

/// The engine refuses programs with odd loops through negation.
class OddLoopError : public Error {
public:
    using Error::Error;
};

class SearchLimitError : public Error {
public:
    using Error::Error;
};

/// Operation called outside its precondition (e.g. fixing an absent violation).
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace flightgate
