#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "cellcheck/ast.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck::testing {

/// Independent reference evaluator for the numeric corpus: every formula is
/// recomputed from the current values until nothing changes. Supports
/// literals, references, ranges inside aggregates, + - * / ^, unary minus,
/// SUM, AVG, MIN, MAX, COUNT, ABS. Absent cells are 0 in arithmetic and
/// skipped by aggregates.
std::map<CellAddress, double> naive_evaluate(const Workbook& wb);

/// Cells listed in `a` whose numbers differ beyond the default tolerance rule.
std::set<CellAddress> two_grid_diff(const std::map<CellAddress, double>& a, const std::map<CellAddress, double>& b);

bool close(double a, double b);

/// Exponential-time edit distance straight from the recursive definition.
std::size_t brute_levenshtein(std::string_view a, std::string_view b);

/// Longest path length in edges by enumerating every simple path.
std::size_t brute_longest_path(const std::map<CellAddress, std::vector<CellAddress>>& adjacency);

/// Edges read directly off the formulas: A -> every distinct cell A mentions.
std::map<CellAddress, std::vector<CellAddress>> brute_edges(const Workbook& wb);

}  // namespace cellcheck::testing
