#pragma once

#include <stdexcept>
#include <string>

namespace hierflow {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parsing
struct MalformedFence : Error {
    explicit MalformedFence(const std::string& what) : Error(what) {}
};
struct SpanOutOfBounds : Error {
    explicit SpanOutOfBounds(const std::string& what) : Error(what) {}
};

// Masking / schedules
struct NonMonotoneScheme : Error {
    explicit NonMonotoneScheme(const std::string& what) : Error(what) {}
};
struct InvalidHorizon : Error {
    explicit InvalidHorizon(const std::string& what) : Error(what) {}
};

// Tensors / losses
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};
struct EmptyMask : Error {
    explicit EmptyMask(const std::string& what) : Error(what) {}
};

// Model
struct SequenceTooLong : Error {
    explicit SequenceTooLong(const std::string& what) : Error(what) {}
};
struct CorruptCheckpoint : Error {
    explicit CorruptCheckpoint(const std::string& what) : Error(what) {}
};

// Search
struct EnvFailure : Error {
    explicit EnvFailure(const std::string& what) : Error(what) {}
};
struct BudgetMisuse : Error {
    explicit BudgetMisuse(const std::string& what) : Error(what) {}
};
struct StateSpaceTooLarge : Error {
    explicit StateSpaceTooLarge(const std::string& what) : Error(what) {}
};
struct PairingMismatch : Error {
    explicit PairingMismatch(const std::string& what) : Error(what) {}
};

// Analyzer
struct StructureMismatch : Error {
    explicit StructureMismatch(const std::string& what) : Error(what) {}
};

// IO / config
struct IoFailure : Error {
    explicit IoFailure(const std::string& what) : Error(what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace hierflow
