#include "cellcheck/value.hpp"

#include <charconv>
#include <cmath>

namespace cellcheck {

Value Value::number(double x) {
    if (!std::isfinite(x)) return error(ErrorKind::BadValue);
    if (x == 0.0) x = 0.0;  // fold -0
    return Value(Variant(x));
}

Value Value::text(std::string s) { return Value(Variant(std::move(s))); }
Value Value::boolean(bool b) { return Value(Variant(b)); }
Value Value::error(ErrorKind kind) { return Value(Variant(kind)); }

std::string_view error_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivZero: return "#DIV/0!";
        case ErrorKind::BadRef: return "#REF!";
        case ErrorKind::Cycle: return "#CYCLE!";
        case ErrorKind::BadValue: return "#VALUE!";
    }
    return "#VALUE!";
}

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivZero: return "DivZero";
        case ErrorKind::BadRef: return "BadRef";
        case ErrorKind::Cycle: return "Cycle";
        case ErrorKind::BadValue: return "BadValue";
    }
    return "BadValue";
}

std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "0";
    return std::string(buf, end);
}

std::string to_display(const Value& v) {
    struct Visitor {
        std::string operator()(Blank) const { return ""; }
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "TRUE" : "FALSE"; }
        std::string operator()(ErrorKind k) const { return std::string(error_code(k)); }
    };
    return std::visit(Visitor{}, v.variant());
}

}  // namespace cellcheck
