#pragma once

#include <stdexcept>
#include <string>

namespace ncurv {

/// Malformed input text (spec files, parameter strings).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a mathematical precondition, such as a
/// tuple that is not a row contraction or generators that are not wandering.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured basis cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vector does not live in the model of the representation it is passed to.
struct ModelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace ncurv
