#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellcheck/eval.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

enum class ErrorCategory { Operator, Function, Reference, Constant, Unclassified };

std::string_view category_name(ErrorCategory c);  // "operator", "function", ...

/// Additional finding attached to a classified cell:
///  - {"function"|"operator"|"reference"|"constant", item, "used too often"}
///    for surplus items of the submission,
///  - {"absolute_reference"|"relative_reference", found, expected} when a
///    reference differs only in its $-flags,
///  - {"formula", expected construct, "a formula is expected"} when the
///    submission holds a constant.
struct ExtraItem {
    std::string kind;
    std::string name;
    std::string message;
    bool operator==(const ExtraItem&) const = default;
};

struct SpellingHint {
    std::string found;
    std::string expected;
    bool operator==(const SpellingHint&) const = default;
};

struct ErrorDetail {
    CellAddress cell;
    ErrorCategory category = ErrorCategory::Unclassified;
    std::vector<std::string> found;     // fragments from the submission
    std::vector<std::string> expected;  // fragments from the solution, in its own notation
    std::vector<ExtraItem> extras;
    std::optional<SpellingHint> spelling;
    bool operator==(const ErrorDetail&) const = default;
};

/// Classifies why a formula-error cell is wrong. Both formulas are
/// canonicalized first, then compared as multisets in fixed order:
/// operators/functions, then references, then constants. The first stage with
/// a difference decides the category.
ErrorDetail diff_formula(const Cell& solution, const Cell& submission, const Tolerance& tolerance = {},
                         std::string_view default_sheet = {});

/// Classic edit distance (insert, delete, substitute; unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Present iff the texts differ and their edit distance is at most
/// max(1, ceil(len(expected) / 4)).
std::optional<SpellingHint> spelling_hint(std::string_view found, std::string_view expected);

}  // namespace cellcheck
