#pragma once

#include <stdexcept>
#include <string>

namespace manna {

/// Base for every failure the library reports by exception.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input (files, flags, parameter ranges). CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

class MalformedRational : public InputError {
public:
    explicit MalformedRational(const std::string& text)
        : InputError("malformed rational: \"" + text + "\""), text_(text) {}
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

class EpsilonOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class InvalidRange : public InputError {
public:
    using InputError::InputError;
};

/// Enumeration would exceed the configured owner-vector cap.
class CapExceeded : public InputError {
public:
    using InputError::InputError;
};

/// A market precondition (valid equilibrium) does not hold.
class NotAnEquilibrium : public InputError {
public:
    using InputError::InputError;
};

/// A picking-sequence output failed its WEF1 post-check and no repair was possible.
class ValidationFailed : public Error {
public:
    using Error::Error;
};

/// A runtime invariant assertion failed. Always an implementation bug. CLI exit code 3.
class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace manna
