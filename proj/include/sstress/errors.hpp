#pragma once

#include <stdexcept>
#include <string>

namespace sstress {

// Error taxonomy mirrored by the CLI exit codes: config 2, parse 3, io 4.

// Bad option values, impossible sizes, k > n and the like.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Structurally valid input with invalid values (non-positive length, ...).
class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sstress
