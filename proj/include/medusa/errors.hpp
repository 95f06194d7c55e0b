#pragma once

#include <stdexcept>
#include <string>

namespace medusa {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ConfigErrorKind {
    NonPowerOfTwoWidth,
    WidthMismatch,
    TooManyPorts,
    ZeroBurst,
    InvalidValue,
    UnknownKey,
    Parse,
};

const char* to_string(ConfigErrorKind kind);

class ConfigError : public Error {
public:
    ConfigError(ConfigErrorKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

/// Rotation amount or lane-vector shape outside what the rotation unit supports.
class AmountOutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

class MalformedRequest : public Error {
public:
    using Error::Error;
};

/// Two ports addressed the same buffer bank in one cycle. The diagonal
/// schedule makes this unreachable; it is raised only on an internal bug.
class BankConflict : public Error {
public:
    using Error::Error;
};

class SimDeadlock : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace medusa
