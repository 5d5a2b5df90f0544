#pragma once

#include <stdexcept>
#include <string>

namespace critheat {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad exponent, empty grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Configuration document failed schema validation. `path` is a JSON pointer.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// The time integrator could not continue (dt underflow, negative state).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Bisection endpoints do not bracket a change of classification.
class BracketInvalid : public Error {
public:
    using Error::Error;
};

}  // namespace critheat
