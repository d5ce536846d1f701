#pragma once

#include <stdexcept>
#include <string>

namespace gridflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Feeder-file ingestion failures, each carrying a location/path in the message.
struct ParseError : Error {
    using Error::Error;
};
struct SyntaxError : ParseError {
    using ParseError::ParseError;
};
struct SchemaError : ParseError {
    using ParseError::ParseError;
};
struct SemanticError : ParseError {
    using ParseError::ParseError;
};

struct SingularMatrixError : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct UndervoltageError : Error {
    using Error::Error;
};
struct ZeroDiagonalError : Error {
    using Error::Error;
};
struct CorruptStructureError : Error {
    using Error::Error;
};

}  // namespace gridflow
