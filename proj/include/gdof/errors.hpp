#pragma once

#include <stdexcept>
#include <string>

namespace gdof {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, numbers, cycle strings).
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed input that violates a precondition (index range, sign, shape).
struct ValidationError : Error {
    using Error::Error;
};

/// An enumeration or scan would exceed its size cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// The operation's math requires a regime the matrix is not in.
struct RegimeRefusal : Error {
    using Error::Error;
};

}  // namespace gdof
