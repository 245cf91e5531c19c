#pragma once

#include <stdexcept>
#include <string>

namespace kdesample {

// Base for every failure the library raises. The CLI maps these to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration: missing column, unknown key, malformed config file.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input file contents (carries row/column location in the message).
class ParseError : public Error {
public:
    using Error::Error;
};

// Data violates a contract: single-class file, class too small, etc.
class DataError : public Error {
public:
    using Error::Error;
};

// Caller passed an out-of-range argument (k too large, n_keep > M, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Model fitting failed (singular covariance and the like).
class FitError : public Error {
public:
    using Error::Error;
};

// Metric undefined for the given confusion counts / label vector.
class MetricError : public Error {
public:
    using Error::Error;
};

// Training diverged.
class TrainError : public Error {
public:
    using Error::Error;
};

// A search produced no usable candidate.
class SearchError : public Error {
public:
    using Error::Error;
};

// Synthetic data generation cannot satisfy its spec.
class GeneratorError : public Error {
public:
    using Error::Error;
};

}  // namespace kdesample
