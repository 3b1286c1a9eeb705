#pragma once

#include <stdexcept>
#include <string>

namespace charspace {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched ambient dimension, row length or tuple arity.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed input text or JSON (carries a location in the message).
struct ParseError : Error {
    using Error::Error;
};

// Structural law violated: flavor identity, morphism multiplicativity,
// multilinearity of a word, witness not a series, ...
struct ValidationError : Error {
    using Error::Error;
};

// A stated hypothesis of an engine mode does not hold on the input.
struct HypothesisError : Error {
    using Error::Error;
};

// Closure or enumeration exceeded its configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// A complete search contradicted a guaranteed conclusion; this is an
// implementation defect, never a property of the input.
struct TheoremViolation : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

} // namespace charspace
