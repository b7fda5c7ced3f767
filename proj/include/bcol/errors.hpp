#pragma once

#include <stdexcept>
#include <string>

namespace bcol {

// Base of every error the library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};
struct MalformedHeader : ParseError {
    using ParseError::ParseError;
};
struct VertexOutOfRange : ParseError {
    using ParseError::ParseError;
};
struct SelfLoop : ParseError {
    using ParseError::ParseError;
};
struct DuplicateEdge : ParseError {
    using ParseError::ParseError;
};
struct MalformedLine : ParseError {
    using ParseError::ParseError;
};

struct InstanceTooLarge : Error {
    using Error::Error;
};
struct CapExceeded : Error {
    using Error::Error;
};
struct StateBudgetExceeded : Error {
    using Error::Error;
};
struct NotATree : Error {
    using Error::Error;
};
struct DisconnectedInput : Error {
    using Error::Error;
};
struct PreconditionViolated : Error {
    using Error::Error;
};
struct ImproperColoring : Error {
    using Error::Error;
};

// A proven invariant failed: always a bug, never bad input.
struct InternalInvariantViolation : Error {
    std::string id;
    InternalInvariantViolation(std::string id_, const std::string& what)
        : Error(id_ + ": " + what), id(std::move(id_)) {}
};

#define BCOL_ENSURE(cond, id)                                                  \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::bcol::InternalInvariantViolation(id, #cond);               \
    } while (0)

}  // namespace bcol
