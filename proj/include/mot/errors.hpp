#pragma once

#include <stdexcept>
#include <string>

namespace mot {

// Base class for every error thrown by this library.
struct MotError : std::runtime_error {
    explicit MotError(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the mathematical domain of the operation.
struct DomainError : MotError {
    explicit DomainError(const std::string& what) : MotError(what) {}
};

// Packet-error-rate coefficients would be negative (packet_bits * c_m < 1).
struct InvalidCoefficientError : MotError {
    explicit InvalidCoefficientError(const std::string& what) : MotError(what) {}
};

// Expected-retransmission ratio is undefined at per == 0; callers substitute
// a single guaranteed transmission instead (see expected_retransmissions).
struct DivisionDomainError : MotError {
    explicit DivisionDomainError(const std::string& what) : MotError(what) {}
};

// A stop id or sensor id is outside the instance.
struct IndexError : MotError {
    explicit IndexError(const std::string& what) : MotError(what) {}
};

// Filesystem-level read/write failure.
struct IoError : MotError {
    explicit IoError(const std::string& what) : MotError(what) {}
};

// Malformed scenario document. `line` is 1-based; 0 means "whole file".
struct SchemaError : MotError {
    int line;
    SchemaError(int line_, const std::string& what)
        : MotError("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Stop placement could not avoid the restricted areas.
struct GenerationFailure : MotError {
    explicit GenerationFailure(const std::string& what) : MotError(what) {}
};

// Solver limits guard (exact solver refuses oversized instances).
struct LimitExceeded : MotError {
    explicit LimitExceeded(const std::string& what) : MotError(what) {}
};

}  // namespace mot
