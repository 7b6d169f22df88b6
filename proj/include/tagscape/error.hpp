#pragma once

#include <stdexcept>
#include <string>

namespace tagscape {

// Base for every failure the library reports. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range user input (files, flags, coordinates).
class InputError : public Error {
public:
    using Error::Error;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

class GeometryError : public InputError {
public:
    using InputError::InputError;
};

// The layout cannot be produced for geometric reasons (region too small, pinned tag blocked).
class InfeasibleLayout : public Error {
public:
    using Error::Error;
};

} // namespace tagscape
