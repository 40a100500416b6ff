#pragma once

#include <functional>
#include <map>
#include <span>

#include "cellcheck/ast.hpp"
#include "cellcheck/value.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// Numbers a and b are equal iff |a-b| <= max(abs, rel * max(|a|, |b|)).
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;
    bool operator==(const Tolerance&) const = default;
};

/// Text compares after trimming surrounding whitespace, case-sensitively;
/// different variants never compare equal (Blank != 0).
bool values_equal(const Value& a, const Value& b, const Tolerance& t = {});

/// Evaluated values of a workbook. Addresses not listed are Blank.
class ValueGrid {
public:
    const Value& get(const CellAddress& addr) const;
    void set(const CellAddress& addr, Value v) { values_.insert_or_assign(addr, std::move(v)); }
    bool contains(const CellAddress& addr) const { return values_.count(addr) != 0; }

    const std::map<CellAddress, Value>& values() const { return values_; }
    bool operator==(const ValueGrid&) const = default;

private:
    std::map<CellAddress, Value> values_;
};

using CellLookup = std::function<Value(const CellAddress&)>;

/// Evaluates one expression. Ranges are only meaningful as arguments of
/// aggregate functions; anywhere else they yield BadValue.
Value evaluate_expr(const Expr& e, const CellLookup& lookup);

/// Function semantics over already-evaluated arguments (ranges expanded).
/// Aggregates skip Blank, Text and Boolean operands.
Value apply_function(Function f, std::span<const Value> args);

/// Evaluates every formula in dependency order. A formula whose result is
/// Blank shows 0. Cells on a reference cycle
/// become Cycle; references into unknown sheets become BadRef; unparseable
/// formulas become BadValue.
ValueGrid evaluate(const Workbook& wb);

}  // namespace cellcheck
