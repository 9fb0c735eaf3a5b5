#pragma once

#include <stdexcept>
#include <string>

namespace vieta {

// Invalid input: the caller handed us something outside an operation's
// domain. CLI maps these to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Internal invariant violation: something a theorem rules out happened
// anyway. CLI maps these to exit code 3.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct PointNotOnConic : InputError {
    using InputError::InputError;
};
struct UnsupportedRange : InputError {
    using InputError::InputError;
};
struct NotDivisible : InputError {
    using InputError::InputError;
};
struct DegenerateDenominator : InputError {
    using InputError::InputError;
};
struct RadicandMismatch : InputError {
    using InputError::InputError;
};
struct NotAUnit : InputError {
    using InputError::InputError;
};
struct ZeroElement : InputError {
    using InputError::InputError;
};
struct InvalidFamily : InputError {
    using InputError::InputError;
};
struct ParameterOutOfTheoremRange : InputError {
    using InputError::InputError;
};
struct DegenerateK : InputError {
    using InputError::InputError;
};
struct PreconditionViolated : InputError {
    using InputError::InputError;
};
struct NonSquareRequired : InputError {
    using InputError::InputError;
};
struct FactorizationTooLarge : InputError {
    using InputError::InputError;
};
struct OddCoordinate : InputError {
    using InputError::InputError;
};

// Step budget exhausted in a descent that a lemma says must terminate.
struct NonterminatingGuard : InternalError {
    using InternalError::InternalError;
};

}  // namespace vieta
