#pragma once

#include <stdexcept>
#include <string>

namespace piep {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-contract physics parameter.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// Operation undefined at (or numerically on) the exceptional point.
class ExceptionalPointError : public Error {
public:
    using Error::Error;
};

class NotDefectiveError : public Error {
public:
    using Error::Error;
};

class NumericalDegeneracyError : public Error {
public:
    using Error::Error;
};

/// Query outside the domain of a schedule or trajectory.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Degenerate input such as zero initial energy or a zero eigen-coefficient.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Integrator produced a non-finite state.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double z) : Error(what), z_(z) {}
    double z() const noexcept { return z_; }

private:
    double z_;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, int line)
        : Error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace piep
