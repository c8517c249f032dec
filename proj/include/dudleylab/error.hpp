#pragma once

#include <stdexcept>
#include <string>

namespace dudleylab {

// Caller-supplied data violates a precondition (bad matrix, mismatched
// spaces, nonpositive epsilon, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Instance exceeds a hard size limit of an exhaustive routine.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An optimization kernel stalled (iteration cap) or produced an
// infeasible answer.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two routes that must agree disagreed. Always a bug, never bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace dudleylab
