#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fixbreak {

/// Input exceeds a documented size guard for an exhaustive search.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A move failed legality validation; the message names the violated clause.
struct IllegalMoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The Fixer engine was asked to play a position where the winning condition
/// fails. Carries the refuting sub-family when it is cheap to compute.
struct ConditionError : std::runtime_error {
    ConditionError(const std::string& what, std::vector<int> witness_subset)
        : std::runtime_error(what), witness(std::move(witness_subset)) {}
    std::vector<int> witness;
};

/// The necessity strategy selected a swap case that no legal swap realizes.
struct ProofGapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fixbreak
