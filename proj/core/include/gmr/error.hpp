#pragma once

#include <stdexcept>
#include <string>

namespace gmr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    explicit ParseError(const std::string& message) : ParseError(0, message) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Static type error in an embedding expression.
class SortError : public Error {
public:
    using Error::Error;
};

/// Ill-formed graph structure: unknown ids, duplicate ids, broken inclusions.
class StructureError : public Error {
public:
    using Error::Error;
};

/// Pushout preconditions violated (non-injective side, label clash).
class PushoutError : public Error {
public:
    using Error::Error;
};

/// The match violates the dangling condition, so no direct transformation exists.
class DanglingError : public Error {
public:
    using Error::Error;
};

/// Evaluation of an embedding expression failed.
class EvalError : public Error {
public:
    using Error::Error;
};

}  // namespace gmr
