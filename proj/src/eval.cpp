#include "cellcheck/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cellcheck/formula_ops.hpp"
#include "cellcheck/parser.hpp"

namespace cellcheck {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

Value worst_error(const Value& a, const Value& b) {
    if (a.is_error() && b.is_error()) return Value::error(std::min(a.as_error(), b.as_error()));
    return a.is_error() ? a : b;
}

// Numeric coercion for arithmetic: Blank -> 0, Boolean -> 0/1, Text -> BadValue.
std::optional<double> to_arith(const Value& v) {
    if (v.is_number()) return v.as_number();
    if (v.is_blank()) return 0.0;
    if (v.is_boolean()) return v.as_boolean() ? 1.0 : 0.0;
    return std::nullopt;
}

std::string to_concat_text(const Value& v) {
    if (v.is_blank()) return {};
    return to_display(v);
}

// Spreadsheet-style ordering: numbers < text < booleans; Blank acts as 0 or "".
int compare_values(const Value& a, const Value& b) {
    auto rank = [](const Value& v) {
        if (v.is_number()) return 0;
        if (v.is_text()) return 1;
        return 2;
    };
    Value x = a;
    Value y = b;
    if (x.is_blank()) x = y.is_text() ? Value::text("") : y.is_boolean() ? Value::boolean(false) : Value::number(0);
    if (y.is_blank()) y = x.is_text() ? Value::text("") : x.is_boolean() ? Value::boolean(false) : Value::number(0);
    if (rank(x) != rank(y)) return rank(x) < rank(y) ? -1 : 1;
    if (x.is_number()) return x.as_number() < y.as_number() ? -1 : (x.as_number() > y.as_number() ? 1 : 0);
    if (x.is_boolean()) return static_cast<int>(x.as_boolean()) - static_cast<int>(y.as_boolean());
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    const auto lx = lower(x.as_text());
    const auto ly = lower(y.as_text());
    return lx < ly ? -1 : (lx > ly ? 1 : 0);
}

Value apply_binary(BinaryOp op, const Value& l, const Value& r) {
    if (l.is_error() || r.is_error()) return worst_error(l, r);
    switch (op) {
        case BinaryOp::Concat:
            return Value::text(to_concat_text(l) + to_concat_text(r));
        case BinaryOp::Eq: return Value::boolean(compare_values(l, r) == 0);
        case BinaryOp::Ne: return Value::boolean(compare_values(l, r) != 0);
        case BinaryOp::Lt: return Value::boolean(compare_values(l, r) < 0);
        case BinaryOp::Le: return Value::boolean(compare_values(l, r) <= 0);
        case BinaryOp::Gt: return Value::boolean(compare_values(l, r) > 0);
        case BinaryOp::Ge: return Value::boolean(compare_values(l, r) >= 0);
        default: break;
    }
    auto a = to_arith(l);
    auto b = to_arith(r);
    if (!a || !b) return Value::error(ErrorKind::BadValue);
    switch (op) {
        case BinaryOp::Add: return Value::number(*a + *b);
        case BinaryOp::Sub: return Value::number(*a - *b);
        case BinaryOp::Mul: return Value::number(*a * *b);
        case BinaryOp::Div:
            if (*b == 0) return Value::error(ErrorKind::DivZero);
            return Value::number(*a / *b);
        case BinaryOp::Pow:
            if (*a == 0 && *b < 0) return Value::error(ErrorKind::DivZero);
            return Value::number(std::pow(*a, *b));
        default:
            return Value::error(ErrorKind::BadValue);
    }
}

// Half away from zero at `digits` decimal places, performed on the shortest
// decimal representation so that ROUND(1.005, 2) gives 1.01.
double round_half_away(double x, int digits) {
    if (x == 0) return 0;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(x), std::chars_format::scientific);
    if (ec != std::errc()) return x;
    std::string s(buf, end);
    const auto epos = s.find('e');
    const int exp10 = std::atoi(s.c_str() + epos + 1);
    std::string mantissa;
    for (std::size_t i = 0; i < epos; ++i) {
        if (s[i] != '.') mantissa += s[i];
    }
    // value = 0.d1d2d3... * 10^(exp10 + 1); keep (exp10 + 1 + digits) digits.
    const int keep = exp10 + 1 + digits;
    if (keep < 0) return 0;
    if (keep >= static_cast<int>(mantissa.size())) return x;
    bool round_up = mantissa[static_cast<std::size_t>(keep)] >= '5';
    std::string kept = mantissa.substr(0, static_cast<std::size_t>(keep));
    if (round_up) {
        int i = keep - 1;
        while (i >= 0 && kept[static_cast<std::size_t>(i)] == '9') {
            kept[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i < 0) {
            kept.insert(kept.begin(), '1');
        } else {
            ++kept[static_cast<std::size_t>(i)];
        }
    }
    if (kept.empty()) return 0;
    // kept holds digits of value * 10^digits as an integer string.
    std::string literal = kept + "e" + std::to_string(-digits);
    double result = 0;
    std::from_chars(literal.data(), literal.data() + literal.size(), result);
    return std::signbit(x) ? -result : result;
}

}  // namespace

bool values_equal(const Value& a, const Value& b, const Tolerance& t) {
    if (a.variant().index() != b.variant().index()) return false;
    if (a.is_number()) {
        const double x = a.as_number();
        const double y = b.as_number();
        const double bound = std::max(t.abs, t.rel * std::max(std::fabs(x), std::fabs(y)));
        return std::fabs(x - y) <= bound;
    }
    if (a.is_text()) return trim(a.as_text()) == trim(b.as_text());
    return a == b;
}

const Value& ValueGrid::get(const CellAddress& addr) const {
    static const Value kBlank;
    auto it = values_.find(addr);
    return it == values_.end() ? kBlank : it->second;
}

Value apply_function(Function f, std::span<const Value> args) {
    auto first_error = [&]() -> std::optional<Value> {
        std::optional<Value> err;
        for (const auto& v : args) {
            if (v.is_error()) err = err ? worst_error(*err, v) : v;
        }
        return err;
    };

    if (is_aggregate(f)) {
        if (args.empty()) return Value::error(ErrorKind::BadValue);
        if (auto err = first_error()) return *err;
        std::vector<double> nums;
        for (const auto& v : args) {
            if (v.is_number()) nums.push_back(v.as_number());
        }
        switch (f) {
            case Function::Sum: {
                double s = 0;
                for (double x : nums) s += x;
                return Value::number(s);
            }
            case Function::Avg: {
                if (nums.empty()) return Value::error(ErrorKind::DivZero);
                double s = 0;
                for (double x : nums) s += x;
                return Value::number(s / static_cast<double>(nums.size()));
            }
            case Function::Count:
                return Value::number(static_cast<double>(nums.size()));
            case Function::Min:
                if (nums.empty()) return Value::error(ErrorKind::BadValue);
                return Value::number(*std::min_element(nums.begin(), nums.end()));
            case Function::Max:
                if (nums.empty()) return Value::error(ErrorKind::BadValue);
                return Value::number(*std::max_element(nums.begin(), nums.end()));
            default:
                break;
        }
    }

    switch (f) {
        case Function::If: {
            if (args.size() < 2 || args.size() > 3) return Value::error(ErrorKind::BadValue);
            const Value& cond = args[0];
            if (cond.is_error()) return cond;
            bool truth;
            if (cond.is_boolean()) {
                truth = cond.as_boolean();
            } else if (cond.is_number()) {
                truth = cond.as_number() != 0;
            } else {
                return Value::error(ErrorKind::BadValue);
            }
            if (truth) return args[1];
            return args.size() == 3 ? args[2] : Value::boolean(false);
        }
        case Function::Round: {
            if (args.size() != 2) return Value::error(ErrorKind::BadValue);
            if (auto err = first_error()) return *err;
            auto x = to_arith(args[0]);
            auto n = to_arith(args[1]);
            if (!x || !n) return Value::error(ErrorKind::BadValue);
            const double digits = std::trunc(*n);
            if (std::fabs(digits) > 300) return Value::error(ErrorKind::BadValue);
            return Value::number(round_half_away(*x, static_cast<int>(digits)));
        }
        case Function::Abs: {
            if (args.size() != 1) return Value::error(ErrorKind::BadValue);
            if (args[0].is_error()) return args[0];
            auto x = to_arith(args[0]);
            if (!x) return Value::error(ErrorKind::BadValue);
            return Value::number(std::fabs(*x));
        }
        default:
            return Value::error(ErrorKind::BadValue);
    }
}

Value evaluate_expr(const Expr& e, const CellLookup& lookup) {
    struct Visitor {
        const CellLookup& lookup;
        Value operator()(const NumberLit& n) const { return Value::number(n.value); }
        Value operator()(const TextLit& t) const { return Value::text(t.text); }
        Value operator()(const BoolLit& b) const { return Value::boolean(b.value); }
        Value operator()(const CellRef& r) const { return lookup(r.address); }
        Value operator()(const RangeRef&) const { return Value::error(ErrorKind::BadValue); }
        Value operator()(const Unary& u) const {
            Value v = evaluate_expr(*u.operand, lookup);
            if (v.is_error()) return v;
            auto x = to_arith(v);
            if (!x) return Value::error(ErrorKind::BadValue);
            return Value::number(u.op == UnaryOp::Neg ? -*x : *x);
        }
        Value operator()(const Binary& b) const {
            return apply_binary(b.op, evaluate_expr(*b.left, lookup), evaluate_expr(*b.right, lookup));
        }
        Value operator()(const FuncCall& f) const {
            std::vector<Value> values;
            for (const auto& a : f.args) {
                if (const auto* r = a.as<RangeRef>()) {
                    if (!is_aggregate(f.function)) return Value::error(ErrorKind::BadValue);
                    std::vector<CellRef> cells;
                    try {
                        cells = expand_range(*r);
                    } catch (const FormulaError&) {
                        return Value::error(ErrorKind::BadValue);
                    }
                    for (const auto& c : cells) values.push_back(lookup(c.address));
                } else {
                    values.push_back(evaluate_expr(a, lookup));
                }
            }
            return apply_function(f.function, values);
        }
    };
    return std::visit(Visitor{lookup}, e.node);
}

ValueGrid evaluate(const Workbook& wb) {
    ValueGrid grid;
    std::map<CellAddress, Expr> parsed = parse_formulas(wb);

    // Constants, referenced blanks, and parse failures first.
    wb.for_each_cell([&](const Cell& cell) {
        if (!cell.is_formula()) {
            grid.set(cell.address, cell.constant());
        } else if (parsed.count(cell.address) == 0) {
            grid.set(cell.address, Value::error(ErrorKind::BadValue));
        }
    });

    // Dense indexing of formula cells for Tarjan's SCC.
    std::vector<CellAddress> nodes;
    std::map<CellAddress, std::size_t> index_of;
    for (const auto& [addr, expr] : parsed) {
        index_of.emplace(addr, nodes.size());
        nodes.push_back(addr);
    }
    std::vector<std::vector<std::size_t>> succ(nodes.size());
    std::vector<bool> self_loop(nodes.size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<CellAddress> refs;
        try {
            refs = references_of(parsed.at(nodes[i]));
        } catch (const FormulaError&) {
            grid.set(nodes[i], Value::error(ErrorKind::BadValue));
            continue;
        }
        for (const auto& r : refs) {
            if (auto it = index_of.find(r); it != index_of.end()) {
                succ[i].push_back(it->second);
                if (it->second == i) self_loop[i] = true;
            } else if (wb.find_sheet(r.sheet) != nullptr && !grid.contains(r)) {
                grid.set(r, Value::blank());
            }
        }
    }

    // Iterative Tarjan; components come out dependencies-first.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> order(nodes.size(), kUnvisited), low(nodes.size(), 0);
    std::vector<bool> on_stack(nodes.size(), false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;
    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    for (std::size_t root = 0; root < nodes.size(); ++root) {
        if (order[root] != kUnvisited) continue;
        std::vector<Frame> frames{{root, 0}};
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < succ[f.node].size()) {
                const std::size_t w = succ[f.node][f.next++];
                if (order[w] == kUnvisited) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], order[w]);
                }
                continue;
            }
            const std::size_t v = f.node;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
            if (low[v] == order[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                components.push_back(std::move(comp));
            }
        }
    }

    auto lookup = [&](const CellAddress& addr) -> Value {
        if (wb.find_sheet(addr.sheet) == nullptr) return Value::error(ErrorKind::BadRef);
        return grid.get(addr);
    };
    for (const auto& comp : components) {
        if (comp.size() > 1 || self_loop[comp.front()]) {
            for (std::size_t i : comp) grid.set(nodes[i], Value::error(ErrorKind::Cycle));
            continue;
        }
        const std::size_t i = comp.front();
        if (grid.contains(nodes[i])) continue;  // capacity failure recorded above
        Value v = evaluate_expr(parsed.at(nodes[i]), lookup);
        grid.set(nodes[i], v.is_blank() ? Value::number(0) : std::move(v));
    }
    return grid;
}

}  // namespace cellcheck
