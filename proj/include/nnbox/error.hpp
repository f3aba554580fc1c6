#pragma once

#include <stdexcept>
#include <string>

namespace nnbox {

/// Malformed text input (star-word, set-family or simplex documents).
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A parameter falls outside the range an operation supports (dense sizes,
/// enumeration limits, mismatched dimensions).
class GuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation that requires a verified input (a family passing the
/// alpha/beta/gamma checks, a nearly neighbourly simplex family) received one
/// that fails.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer arithmetic would leave the 64-bit range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace nnbox
