#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cellcheck/ast.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// Parse-stage failure. `position` is the 1-based character offset in the
/// formula text (the leading '=' is position 1).
class FormulaError : public std::runtime_error {
public:
    enum class Kind { Syntax, Name, Capacity };

    FormulaError(Kind kind, std::size_t position, const std::string& message)
        : std::runtime_error(message), kind_(kind), position_(position) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

/// Parses "=expr". Unqualified references get `sheet` as their sheet.
/// Precedence, loosest first: comparisons, &, + -, * /, unary, ^ (right
/// associative). Arguments may be separated by ',' or ';'.
Expr parse_formula(std::string_view text, std::string_view sheet = {});

/// Prints with minimal parentheses, upper-case function names and ','
/// separators. References on `context_sheet` are printed unqualified.
std::string print_formula(const Expr& e, std::string_view context_sheet = {});

struct SyntaxIssue {
    CellAddress cell;
    std::string message;
    std::size_t position = 0;
    bool operator==(const SyntaxIssue&) const = default;
};

struct SyntaxReport {
    std::vector<SyntaxIssue> errors;
    bool ok() const { return errors.empty(); }
    bool operator==(const SyntaxReport&) const = default;
};

/// Parses every formula cell (sheets in order, row-major) and collects all
/// failures, including ranges above the expansion bound.
SyntaxReport syntax_check(const Workbook& wb);

}  // namespace cellcheck
