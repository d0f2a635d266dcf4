#pragma once

#include <stdexcept>
#include <string>

namespace sqcode {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters, malformed inputs, contract violations.
struct ParamError : Error {
    using Error::Error;
};

// An operation would produce the zero code, which is not representable
// as a LinearCode.
struct EmptyCodeError : ParamError {
    using ParamError::ParamError;
};

// An attack gave up: search budget exhausted or parameters outside the
// range the method supports.
struct AttackError : Error {
    using Error::Error;
};

// The filtration collapsed: the input code is not a GRS code. Kept as a
// distinct type because callers use it as a distinguisher outcome.
struct NotGrsError : AttackError {
    using AttackError::AttackError;
};

}  // namespace sqcode
