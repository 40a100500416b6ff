#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cellcheck/ast.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck::testing {

struct CorpusOptions {
    int max_rows = 8;
    int max_cols = 8;
    int max_depth = 3;
    bool allow_text = false;  // occasional text constants (never referenced)
};

/// Random acyclic workbook on sheet "S": the first one or two rows hold
/// numeric constants, later cells are numbers or formulas referencing only
/// earlier cells in row-major order. Multiplication and division always take
/// a small nonzero literal on the right, so values stay finite.
struct GeneratedWorkbook {
    Workbook workbook;
    std::map<CellAddress, Expr> formulas;
    std::vector<CellAddress> numeric;  // number and formula cells, row-major
    int rows = 0;
    int cols = 0;
};

GeneratedWorkbook generate_workbook(std::mt19937_64& rng, const CorpusOptions& opt = {});

/// Formula depth counting Binary and FuncCall levels.
int formula_depth(const Expr& e);

/// One structural edit of a formula: operator swap, literal change, reference
/// retarget (to another of `candidates`) or function swap.
Expr mutate(const Expr& e, const std::vector<CellAddress>& candidates, std::mt19937_64& rng);

/// Cells of `g.numeric` strictly before `cell`.
std::vector<CellAddress> cells_before(const GeneratedWorkbook& g, const CellAddress& cell);

/// Random expression tree used for parse/print round trips.
Expr random_expr(std::mt19937_64& rng, int depth);

}  // namespace cellcheck::testing
