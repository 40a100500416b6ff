#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cellcheck/address.hpp"

namespace cellcheck {

/// Owning pointer with value semantics (deep copy, deep compare).
template <class T>
class Box {
public:
    Box(T value) : p_(std::make_unique<T>(std::move(value))) {}
    Box(const Box& other) : p_(std::make_unique<T>(*other.p_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) p_ = std::make_unique<T>(*other.p_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;

    T& operator*() { return *p_; }
    const T& operator*() const { return *p_; }
    T* operator->() { return p_.get(); }
    const T* operator->() const { return p_.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a.p_ == *b.p_; }

private:
    std::unique_ptr<T> p_;
};

enum class UnaryOp { Neg, Pos };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Concat, Eq, Ne, Lt, Le, Gt, Ge };
enum class Function { Sum, Avg, Count, Min, Max, If, Round, Abs };

struct Expr;

struct NumberLit {
    double value = 0;
    bool operator==(const NumberLit&) const = default;
};
struct TextLit {
    std::string text;
    bool operator==(const TextLit&) const = default;
};
struct BoolLit {
    bool value = false;
    bool operator==(const BoolLit&) const = default;
};
struct CellRef {
    CellAddress address;
    bool col_absolute = false;
    bool row_absolute = false;
    bool operator==(const CellRef&) const = default;
};
/// Normalized on construction by the parser: start is the top-left corner.
struct RangeRef {
    CellRef start;
    CellRef end;
    bool operator==(const RangeRef&) const = default;
};
struct Unary {
    UnaryOp op;
    Box<Expr> operand;
    bool operator==(const Unary&) const = default;
};
struct Binary {
    BinaryOp op;
    Box<Expr> left;
    Box<Expr> right;
    bool operator==(const Binary&) const = default;
};
struct FuncCall {
    Function function;
    std::vector<Expr> args;
    bool operator==(const FuncCall&) const = default;
};

struct Expr {
    using Node = std::variant<NumberLit, TextLit, BoolLit, CellRef, RangeRef, Unary, Binary, FuncCall>;
    Node node;

    template <class T>
    const T* as() const { return std::get_if<T>(&node); }
    template <class T>
    bool is() const { return std::holds_alternative<T>(node); }

    bool operator==(const Expr&) const = default;
};

// Builders.
Expr number(double v);
Expr text_lit(std::string s);
Expr bool_lit(bool b);
Expr ref(CellAddress a, bool col_abs = false, bool row_abs = false);
Expr range(CellRef a, CellRef b);
Expr unary(UnaryOp op, Expr operand);
Expr binary(BinaryOp op, Expr left, Expr right);
Expr call(Function f, std::vector<Expr> args);

/// Canonical upper-case name; Avg renders as "AVG".
std::string_view function_name(Function f);
/// Case-insensitive lookup; "AVERAGE" maps to Avg.
std::optional<Function> lookup_function(std::string_view name);
/// True for SUM, AVG, COUNT, MIN, MAX: functions that accept ranges.
bool is_aggregate(Function f);

/// "+", "-", "*", "/", "^", "&", "=", "<>", "<", "<=", ">", ">=".
std::string_view operator_symbol(BinaryOp op);
std::string_view operator_symbol(UnaryOp op);

}  // namespace cellcheck
