#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cellcheck/ast.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

inline constexpr std::size_t kDefaultRangeBound = 10000;

/// Cells covered by a range, row-major. Each cell is absolute in an axis only
/// when both corners are. Throws FormulaError(Capacity) above `bound`.
std::vector<CellRef> expand_range(const RangeRef& r, std::size_t bound = kDefaultRangeBound);

/// Every referenced cell, ranges expanded, duplicates removed, row-major.
std::vector<CellAddress> references_of(const Expr& e, std::size_t bound = kDefaultRangeBound);

/// Value-preserving normal form used for comparing formulas:
///  - AVG(args) becomes (a1+...+an)/n over the expanded operands,
///  - SUM(args) becomes a1+...+an,
///  - operands of maximal + and * chains are sorted (cell references
///    row-major, then numbers by value, then everything else by printed form),
///  - --x becomes x.
/// Applied to a fixpoint; no constant folding.
Expr canonicalize(const Expr& e, std::size_t bound = kDefaultRangeBound);

/// Parsed formulas of a workbook, keyed by address. Cells that fail to parse
/// are absent; syntax_check reports them.
std::map<CellAddress, Expr> parse_formulas(const Workbook& wb);

}  // namespace cellcheck
