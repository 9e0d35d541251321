#pragma once

#include <stdexcept>
#include <string>

namespace tlnid {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration, bad arguments, commands invoked with unusable options.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed input data, schema mismatches, unreadable artifacts.
struct DataError : Error {
    using Error::Error;
};

// Tensor/layer dimension conflicts.
struct ShapeError : Error {
    using Error::Error;
};

// Operations invoked out of order (backward before forward, missing upstream artifact).
struct StateError : Error {
    using Error::Error;
};

// NaN/Inf surfaced during training; carries the abort diagnostics.
struct NumericError : Error {
    using Error::Error;
};

// Filesystem and serialization failures (truncation, digest, version).
struct IoError : Error {
    using Error::Error;
};

} // namespace tlnid
