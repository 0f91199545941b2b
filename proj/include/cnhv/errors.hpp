// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace cnhv {

/// Adaptive quadrature ran out of refinement budget above its tolerance.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The effective-setting solver found no rotation angle matching the
/// requested correlation within tolerance.
struct no_root_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace logic {

/// A predicate was asked about a variable the joint does not contain.
struct missing_variable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation's stated precondition (e.g. FW/NS/ST within tolerance)
/// does not hold for the given distribution.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A generator was asked for alphabet sizes it does not support.
struct unsupported_alphabet_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace logic
} // namespace cnhv
