#pragma once

#include <stdexcept>
#include <string>

namespace pirsi {

// Bad caller-supplied parameters (K, M, t, field size, ...).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent wire data.
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// A transcript that cannot be decoded (missing part, missing exploit target).
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for exact enumeration.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pirsi
