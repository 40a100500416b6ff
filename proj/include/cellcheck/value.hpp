#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace cellcheck {

/// Error kinds in propagation priority order: when several operands carry
/// errors, the one with the lowest enumerator wins, so commutative operators
/// stay commutative on errors.
enum class ErrorKind { DivZero, BadRef, Cycle, BadValue };

struct Blank {
    bool operator==(const Blank&) const = default;
};

/// An evaluated or constant cell value. Numbers are always finite.
class Value {
public:
    using Variant = std::variant<Blank, double, std::string, bool, ErrorKind>;

    Value() = default;

    static Value blank() { return Value(); }
    /// Non-finite input becomes ErrorKind::BadValue.
    static Value number(double x);
    static Value text(std::string s);
    static Value boolean(bool b);
    static Value error(ErrorKind kind);

    bool is_blank() const { return std::holds_alternative<Blank>(v_); }
    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }
    bool is_boolean() const { return std::holds_alternative<bool>(v_); }
    bool is_error() const { return std::holds_alternative<ErrorKind>(v_); }

    double as_number() const { return std::get<double>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }
    bool as_boolean() const { return std::get<bool>(v_); }
    ErrorKind as_error() const { return std::get<ErrorKind>(v_); }

    const Variant& variant() const { return v_; }

    /// Exact structural equality; use values_equal for grading comparisons.
    bool operator==(const Value&) const = default;

private:
    explicit Value(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// "#DIV/0!", "#REF!", "#CYCLE!", "#VALUE!".
std::string_view error_code(ErrorKind kind);
/// "DivZero", "BadRef", "Cycle", "BadValue".
std::string_view error_name(ErrorKind kind);

/// Shortest round-trip decimal form: 17 -> "17", 0.1 -> "0.1".
std::string format_number(double x);

/// Human-readable rendering used in messages and traces.
std::string to_display(const Value& v);

}  // namespace cellcheck
