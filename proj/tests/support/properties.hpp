#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cellcheck::testing {

struct PropertyOutcome {
    int cases = 0;       // instances actually checked
    int skipped = 0;     // generated but filtered out
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Single value-changing mutation of a random acyclic solution: formula
/// errors must be exactly the mutated cell and value errors exactly the
/// evaluation diff computed by the naive oracle.
PropertyOutcome check_error_injection(int cases, std::uint64_t seed);

/// match_values(w, w) is clean and level-1 feedback passes.
PropertyOutcome check_self_match(int cases, std::uint64_t seed);

/// Canonical forms evaluate like the originals and are fixpoints.
PropertyOutcome check_canonicalization(int cases, std::uint64_t seed);

}  // namespace cellcheck::testing
