#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input tensor does not match the shape a network or layer expects.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A weight file could not be parsed. `layer()` is -1 for document-level problems.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long layer = -1)
        : Error(layer < 0 ? what : "layer " + std::to_string(layer) + ": " + what), layer_(layer) {}

    [[nodiscard]] long layer() const noexcept { return layer_; }

private:
    long layer_;
};

/// Dataset ingestion failures: truncated files, bad idx magic, labels out of range.
class DataError : public Error {
public:
    using Error::Error;
};

/// Training produced a non-finite loss.
class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace radval
