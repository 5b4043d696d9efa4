#pragma once

#include <stdexcept>
#include <string>

namespace forestsos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to a graph, polynomial or certificate operation.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A certificate composition produced something that does not verify.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// A graph that has a K4 minor was passed where a series-parallel one is required.
class NotSeriesParallelError : public Error {
public:
    using Error::Error;
};

}  // namespace forestsos
