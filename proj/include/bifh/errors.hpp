#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bifh {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- expression errors ----

struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " (byte offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct UnknownIdentifier : Error {
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : Error("unknown identifier '" + name + "' (byte offset " + std::to_string(offset) + ")"),
          name(name), offset(offset) {}
    std::string name;
    std::size_t offset;
};

struct DomainError : Error {
    using Error::Error;
};

struct MissingBinding : Error {
    explicit MissingBinding(const std::string& name)
        : Error("no binding for '" + name + "'"), name(name) {}
    std::string name;
};

// ---- geometry errors ----

struct DimensionMismatch : Error {
    using Error::Error;
};

struct OffManifold : Error {
    using Error::Error;
};

struct DegenerateInput : Error {
    using Error::Error;
};

struct TooFewSamples : Error {
    using Error::Error;
};

struct FrameCollapse : Error {
    using Error::Error;
};

struct StepTooLarge : Error {
    using Error::Error;
};

struct ImmersionFailure : Error {
    using Error::Error;
};

struct NormalDegeneracy : Error {
    using Error::Error;
};

// ---- classifier errors ----

struct Ambiguous : Error {
    using Error::Error;
};

struct NoCandidates : Error {
    using Error::Error;
};

struct SingularityReached : Error {
    using Error::Error;
};

struct StepRejected : Error {
    using Error::Error;
};

struct ModePreconditionFailed : Error {
    using Error::Error;
};

// ---- CLI errors ----

struct ConfigError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

}  // namespace bifh
