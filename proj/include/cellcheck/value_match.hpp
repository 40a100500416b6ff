#pragma once

#include <optional>
#include <set>
#include <vector>

#include "cellcheck/eval.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

enum class MatchPhase { FirstCompare, ReEvaluate };

struct TraceEntry {
    CellAddress cell;
    MatchPhase phase;
    Value solution;
    Value submission;
    bool equal;
    bool operator==(const TraceEntry&) const = default;
};

struct MatchResult {
    std::vector<CellAddress> value_errors;    // row-major
    std::vector<CellAddress> formula_errors;  // row-major, subset of value_errors
    Workbook corrected;                       // submission after solution values were patched in
    std::vector<TraceEntry> trace;            // in visiting order
};

/// Compares a submission against a reference solution along the reference
/// dependency graph.
///
/// A depth-first search is started from every output node of the reference
/// graph (row-major), skipping nodes visited by an earlier search. On first
/// visit a node's solution value is compared with the submission's value at
/// the same address; a mismatch is a value error. After all out-neighbors
/// are finished, a value-error cell is re-evaluated against the working copy,
/// which by then holds solution values for every erroneous descendant. A cell
/// that still mismatches is a formula error and its working-copy entry is
/// replaced by the solution value, so errors it propagated upward disappear.
///
/// With `graded`, comparisons are limited to those cells and their descendants
/// in the reference graph. Throws ConfigError when the reference has cycles.
MatchResult match_values(const Workbook& reference, const Workbook& submission,
                         const Tolerance& tolerance = {},
                         const std::optional<std::set<CellAddress>>& graded = std::nullopt);

}  // namespace cellcheck
