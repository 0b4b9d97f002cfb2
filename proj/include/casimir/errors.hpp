#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed type, wrong shape, non-dominant weight where one is required.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A combinatorial search was refused because it would exceed a configured cap.
/// `reason` is a short machine-readable tag ("weyl_order", "hidden_points", ...).
class CapExceeded : public Error {
public:
    CapExceeded(std::string reason, const std::string& what)
        : Error(what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

/// An internal invariant failed (for instance a characteristic polynomial with a
/// nonzero imaginary coefficient). Signals a bug, never bad input.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace casimir
